//! Drives the command-line front end in-process and lists what it wrote.

fn main() {
    let out = std::env::temp_dir().join("wirenet-example");
    let out = out.to_string_lossy().to_string();
    for args in [
        vec!["verify"],
        vec!["bloch", "bands", "--lattice", "G", "--steps", "8"],
        vec!["butterfly", "--lattice", "P", "--max-den", "5"],
        vec!["classify", "--point", "chi=(1/4,1/4,1/4)"],
    ] {
        let mut argv = vec!["wirenet"];
        argv.extend(&args);
        argv.extend(["--out", &out, "--no-timestamp"]);
        let code = wirenet::cli::main_with_args(argv);
        println!("exit code {code}\n");
    }
}
