fn main() {
    std::process::exit(plexmesh_cli::run(std::env::args_os()));
}
