fn main() { println!("kef"); }
