//! Column order and values per subcommand, pinned by CSV files in
//! `tests/golden`. Set `UPDATE_GOLDEN=1` to regenerate.

use std::fs;
use std::path::PathBuf;

use kerramp_cli::{parse_config, run, Command};

const COMMANDS: &[Command] = &[
    Command::BrightPoint,
    Command::SteadyState,
    Command::GainSweep,
    Command::NoiseSweep,
    Command::KappaASweep,
    Command::DetuningSweep,
    Command::Bandwidth,
    Command::Gbp,
    Command::McValidate,
];

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for &cmd in COMMANDS {
        let name = cmd.name();
        let text = fs::read_to_string(dir().join(format!("{name}.toml"))).unwrap();
        let cfg = parse_config(&text).unwrap();
        let csv = run(cmd, &cfg).unwrap().to_csv_string();
        let path = dir().join(format!("{name}.csv"));
        if update {
            fs::write(&path, &csv).unwrap();
        } else if fs::read_to_string(&path).unwrap() != csv {
            stale.push(name);
        }
    }
    assert!(stale.is_empty(), "output differs from golden file: {stale:?}");
}

#[test]
fn headers_are_stable() {
    let header = |name: &str| {
        fs::read_to_string(dir().join(format!("{name}.csv")))
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(header("gain-sweep"), "kappa_g,intensity,G_s_dB,stable");
    assert_eq!(header("noise-sweep"), "kappa_g,intensity,G_s_dB,G_n_dB,F_dB,stable");
    assert!(header("bright-point").starts_with("kappa_g_star,omega_d_star,"));
    assert_eq!(
        header("gbp"),
        "n_in,kerr,delta_lo,delta_hi,delta_omega,peak_delta,G_s_peak_dB,gbp,islands"
    );
}

#[test]
fn bright_point_row() {
    let text = fs::read_to_string(dir().join("bright-point.csv")).unwrap();
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((row[0] - 0.85).abs() < 1e-10);
    assert!((row[1] + 0.3).abs() < 1e-10);
}
