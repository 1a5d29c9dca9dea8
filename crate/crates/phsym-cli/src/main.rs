fn main() {
    println!("phsym placeholder");
}
