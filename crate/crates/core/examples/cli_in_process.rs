//! Drives the command-line interface from code and collects its JSON lines.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    for args in [
        vec!["circleforge", "enumerate", "--n", "6"],
        vec!["circleforge", "coeffs", "--series", "G1bar", "--order", "8"],
        vec!["circleforge", "check-transform", "--law", "P_law", "--h", "1", "--k", "3", "--z", "4/5,1/5"],
    ] {
        let code = circleforge::cli::run(args, &mut out, &mut err);
        println!("exit {code}");
    }
    print!("{}", String::from_utf8_lossy(&out));
}
