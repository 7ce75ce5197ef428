fn main() {
    std::process::exit(stabtop::cli::main_entry());
}
