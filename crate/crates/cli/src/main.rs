use std::process::ExitCode;

use qineq_cli::figures::{
    self, GridRange, DEFAULT_QUAD_POINTS, FIG1_RANGE, FIG2_STEPS, FIG3_STEPS, FIG3_THETAS,
    GAUSSIAN_RANGE,
};
use qineq_cli::selftest::{self, SelftestConfig};

const USAGE: &str = "usage: qineq <fig1|fig2|box|gaussian|fig3|selftest> \
[--out PATH] [--xmin F --xmax F --steps N] [--quad-points N] \
[--theta-list F,F,...] [--seed N] [--force-fail]";

struct Args {
    command: String,
    out: Option<String>,
    xmin: Option<f64>,
    xmax: Option<f64>,
    steps: Option<usize>,
    quad_points: usize,
    theta_list: Option<Vec<f64>>,
    seed: u64,
    force_fail: bool,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("{USAGE}");
    ExitCode::from(64)
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut args = Args {
        command: argv.first().cloned().ok_or("missing command")?,
        out: None,
        xmin: None,
        xmax: None,
        steps: None,
        quad_points: DEFAULT_QUAD_POINTS,
        theta_list: None,
        seed: 42,
        force_fail: false,
    };
    let mut it = argv[1..].iter();
    while let Some(flag) = it.next() {
        let mut value = |name: &str| -> Result<&String, String> {
            it.next().ok_or_else(|| format!("{name} needs a value"))
        };
        match flag.as_str() {
            "--out" => args.out = Some(value("--out")?.clone()),
            "--xmin" => {
                args.xmin = Some(value("--xmin")?.parse().map_err(|_| "bad --xmin")?)
            }
            "--xmax" => {
                args.xmax = Some(value("--xmax")?.parse().map_err(|_| "bad --xmax")?)
            }
            "--steps" => {
                args.steps = Some(value("--steps")?.parse().map_err(|_| "bad --steps")?)
            }
            "--quad-points" => {
                args.quad_points =
                    value("--quad-points")?.parse().map_err(|_| "bad --quad-points")?
            }
            "--theta-list" => {
                let list: Result<Vec<f64>, _> =
                    value("--theta-list")?.split(',').map(str::parse).collect();
                args.theta_list = Some(list.map_err(|_| "bad --theta-list")?)
            }
            "--seed" => args.seed = value("--seed")?.parse().map_err(|_| "bad --seed")?,
            "--force-fail" => args.force_fail = true,
            other => return Err(format!("unknown flag {other}")),
        }
    }
    if let Some(steps) = args.steps {
        if steps < 2 {
            return Err("--steps must be >= 2".into());
        }
    }
    if args.quad_points < 3 || args.quad_points.is_multiple_of(2) {
        return Err("--quad-points must be odd and >= 3".into());
    }
    Ok(args)
}

fn range_from(args: &Args, default: GridRange) -> GridRange {
    GridRange::new(
        args.xmin.unwrap_or(default.min),
        args.xmax.unwrap_or(default.max),
        args.steps.unwrap_or(default.steps),
    )
}

fn emit(out: &Option<String>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(a) => a,
        Err(msg) => return usage_error(&msg),
    };

    let result = match args.command.as_str() {
        "fig1" => figures::fig1(&range_from(&args, FIG1_RANGE)),
        "fig2" => figures::fig2(args.steps.unwrap_or(FIG2_STEPS)),
        "gaussian" => figures::gaussian(&range_from(&args, GAUSSIAN_RANGE)),
        "fig3" => {
            let thetas = args.theta_list.clone().unwrap_or_else(|| FIG3_THETAS.to_vec());
            figures::fig3(&thetas, args.steps.unwrap_or(FIG3_STEPS))
        }
        "box" => {
            return match figures::box_report(args.quad_points) {
                Ok((text, ok)) => {
                    if let Err(msg) = emit(&args.out, &text) {
                        return usage_error(&msg);
                    }
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => usage_error(&e.to_string()),
            };
        }
        "selftest" => {
            let outcome = selftest::run_all(&SelftestConfig {
                seed: args.seed,
                force_fail: args.force_fail,
            });
            if let Err(msg) = emit(&args.out, &outcome.summary) {
                return usage_error(&msg);
            }
            return if outcome.all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) };
        }
        other => return usage_error(&format!("unknown command {other}")),
    };

    match result {
        Ok(text) => match emit(&args.out, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => usage_error(&msg),
        },
        Err(e) => usage_error(&e.to_string()),
    }
}
