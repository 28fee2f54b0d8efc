//! Driving the command line in-process, as the `tubecover` binary does.

use tubecover::cli::run_with;

fn main() {
    let runs: [&[&str]; 5] = [
        &["classify", "--dim", "3", "--poly", "x1*x2*x3"],
        &["classify", "--dim", "4", "--poly", "(x1*x4 - x2*x3)^2", "--json"],
        &["solve-conditions", "--factors", "2:3"],
        &["build-psi", "--product", "IV_3"],
        &["verify-jordan", "--spec", "herm:2", "--trials", "20", "--seed", "7"],
    ];
    for args in runs {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("tubecover").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ tubecover {}", args.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
        println!("[exit {code}]");
    }
}
