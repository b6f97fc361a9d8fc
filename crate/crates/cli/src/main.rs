use std::io::Write;

fn main() {
    let cfg = match qgr::config_from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(qgr::EXIT_INPUT);
        }
    };
    let r = qgr::run(std::env::args_os(), &cfg);
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(r.code);
}
