//! Drive the command line in-process and capture its output and exit code.

use wernick::cli::run;

fn main() {
    for args in [&["wernick", "list", "--status", "R"][..], &["wernick", "solve", "7", "--instances", "20"], &["wernick", "solve", "138"]] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        println!("$ {}   -> exit {code}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
    }
}
