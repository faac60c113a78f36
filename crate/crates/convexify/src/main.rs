fn main() {
    std::process::exit(convexify::run());
}
