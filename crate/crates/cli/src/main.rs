fn main() {
    println!("pspin-lab");
}
