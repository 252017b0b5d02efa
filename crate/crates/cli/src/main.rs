fn main() {
    println!("gpdef");
}
