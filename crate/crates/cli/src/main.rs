use std::io::Write;

fn main() {
    let out = cubforge::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.text.as_bytes());
    let _ = stdout.flush();
    std::process::exit(out.status.exit_code());
}
