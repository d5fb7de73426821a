fn main() {
    std::process::exit(starq::run());
}
