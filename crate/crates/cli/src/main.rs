fn main() {
    std::process::exit(qflag::run());
}
