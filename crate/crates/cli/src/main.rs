//! Command-line front end: prove, dump, scan, limits.
//!
//! Exit codes: 0 success (prove: Proven; scan/limits: everything certified),
//! 1 usage or domain errors, 2 inconclusive/undecided results, 3 refuted
//! results or a certified counter-ordering. Data goes to stdout or `--out`;
//! diagnostics go to stderr.

use clap::{Args, Parser, Subcommand};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use wilkercert_core::certify::{verify_inequality, Verdict};
use wilkercert_core::exactnum::{parse_rat, pi_enclosure, rat_int, Rat};
use wilkercert_core::numscan::{
    check_limits, default_monotonicity_grid, default_width, monotonicity_spotcheck, rows_to_csv,
    rows_to_json, scan, Holds, ScanConfig,
};
use wilkercert_core::theorems::{build_spec, TheoremId};

#[derive(Parser)]
#[command(name = "wilkercert")]
#[command(about = "Exact positivity certificates and rigorous scans for sharpened Wilker-type inequalities")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a theorem's certificate and emit the full report.
    Prove {
        #[command(flatten)]
        theorem: TheoremArg,

        /// Refinement cap for pi-dependent sign decisions
        #[arg(long, default_value_t = 256)]
        pi_bits: u32,

        /// Output format: json or text
        #[arg(long, default_value = "json")]
        format: String,

        #[command(flatten)]
        out: OutArg,
    },

    /// Print one reconstructed certificate polynomial (A-F).
    Dump {
        #[command(flatten)]
        theorem: TheoremArg,

        /// Which polynomial: A, B, C, D, E or F
        #[arg(long)]
        poly: String,

        /// Refinement cap for pi-dependent sign decisions
        #[arg(long, default_value_t = 256)]
        pi_bits: u32,

        #[command(flatten)]
        out: OutArg,
    },

    /// Rigorous grid scan of an inequality; every row is certified.
    Scan {
        #[command(flatten)]
        theorem: TheoremArg,

        /// Grid start; accepts `p/q`, decimals, and `pi/2-<value>`
        #[arg(long)]
        from: Option<String>,

        /// Grid end; same syntax as --from
        #[arg(long)]
        to: Option<String>,

        #[arg(long, default_value_t = 50)]
        steps: usize,

        /// Target enclosure width; accepts `2^-40`, `p/q` or decimals
        #[arg(long)]
        width: Option<String>,

        /// Output format: csv or json
        #[arg(long, default_value = "csv")]
        format: String,

        #[command(flatten)]
        out: OutArg,
    },

    /// Certify the limit constants near 0 and pi/2, plus the monotonic
    /// decrease of the ratio function on a spot-check grid.
    Limits {
        /// Distance from the interval ends
        #[arg(long, default_value = "1/100")]
        eps: String,

        /// Tolerance at the origin end
        #[arg(long, default_value = "1/10000")]
        tol_zero: String,

        /// Tolerance at the pi/2 end
        #[arg(long, default_value = "1/1000")]
        tol_half_pi: String,

        /// Monotonicity spot-check grid size
        #[arg(long, default_value_t = 20)]
        grid: usize,

        /// Target enclosure width; accepts `2^-40`, `p/q` or decimals
        #[arg(long)]
        width: Option<String>,

        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct TheoremArg {
    /// Theorem id: thm1-left, thm1-right, thm2-left, thm2-right, wilker, sumner
    #[arg(long)]
    theorem: String,
}

#[derive(Args)]
struct OutArg {
    /// Write the artifact to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    TheoremId::parse(s).ok_or_else(|| {
        let valid: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
        format!("unknown theorem `{s}`; valid ids: {}", valid.join(", "))
    })
}

/// Grid endpoint syntax: `p/q`, decimal, or `pi/2-<p/q|decimal>`; the
/// relative form uses the lower bound of a 128-bit pi enclosure.
fn parse_endpoint(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("pi/2-") {
        let d = parse_rat(rest).map_err(|e| e.to_string())?;
        let half_pi_lo = pi_enclosure(128).lo().clone() / rat_int(2);
        return Ok(half_pi_lo - d);
    }
    parse_rat(t).map_err(|e| e.to_string())
}

/// Width syntax: `2^-40`, `p/q`, or a decimal.
fn parse_width(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("2^-") {
        let bits: u32 = rest.parse().map_err(|_| format!("bad width `{s}`"))?;
        return Ok(wilkercert_core::exactnum::pow2_neg(bits));
    }
    parse_rat(t).map_err(|e| e.to_string())
}

fn emit(out: &OutArg, data: &str) -> Result<(), String> {
    match &out.out {
        Some(path) => fs::write(path, data).map_err(|e| format!("writing {path:?}: {e}")),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn run_prove(theorem: &str, pi_bits: u32, format: &str, out: &OutArg) -> ExitCode {
    let id = match parse_theorem(theorem) {
        Ok(id) => id,
        Err(e) => return usage_error(&e),
    };
    let spec = build_spec(id);
    let report = match verify_inequality(&spec, pi_bits) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rendered = match format {
        "json" => report.to_json(),
        "text" => report.to_text(),
        other => return usage_error(&format!("unknown format `{other}` (json|text)")),
    };
    eprintln!(
        "{}: {} in {:?} (pi bits {})",
        id,
        match report.verdict {
            Verdict::Proven => "proven",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        },
        report.elapsed,
        report.pi_bits_used
    );
    if let Err(e) = emit(out, &rendered) {
        return usage_error(&e);
    }
    match report.verdict {
        Verdict::Proven => ExitCode::SUCCESS,
        Verdict::Inconclusive => ExitCode::from(2),
        Verdict::Refuted => ExitCode::from(3),
    }
}

fn run_dump(theorem: &str, poly: &str, pi_bits: u32, out: &OutArg) -> ExitCode {
    let id = match parse_theorem(theorem) {
        Ok(id) => id,
        Err(e) => return usage_error(&e),
    };
    let which = poly.to_ascii_uppercase();
    let valid_for = |id: TheoremId| -> &'static [&'static str] {
        match id {
            TheoremId::Thm1Left => &["A", "B", "C"],
            TheoremId::Thm1Right => &["D", "B", "C"],
            TheoremId::Thm2Left => &["E"],
            TheoremId::Thm2Right => &["F"],
            _ => &[],
        }
    };
    if !valid_for(id).contains(&which.as_str()) {
        return usage_error(&format!(
            "polynomial `{poly}` is not part of `{id}`; available: {}",
            valid_for(id).join(", ")
        ));
    }
    let spec = build_spec(id);
    let report = match verify_inequality(&spec, pi_bits) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rendered = match which.as_str() {
        "A" | "D" | "E" | "F" => report.numerator.to_table_string(),
        // B is the degree-8 shifted factor, C the degree-6 one
        "B" | "C" => {
            let want_deg = if which == "B" { 8 } else { 6 };
            match report
                .denominator_factors
                .iter()
                .find(|f| f.certificate.lifted_shifted.degree() == Some(want_deg))
            {
                Some(f) => f.certificate.lifted_shifted.to_table_string(),
                None => return usage_error("factor not present in this certificate"),
            }
        }
        _ => unreachable!(),
    };
    if let Err(e) = emit(out, &format!("{rendered}\n")) {
        return usage_error(&e);
    }
    ExitCode::SUCCESS
}

fn run_scan(
    theorem: &str,
    from: Option<&str>,
    to: Option<&str>,
    steps: usize,
    width: Option<&str>,
    format: &str,
    out: &OutArg,
) -> ExitCode {
    let id = match parse_theorem(theorem) {
        Ok(id) => id,
        Err(e) => return usage_error(&e),
    };
    let mut cfg = ScanConfig::default_for(id);
    cfg.steps = steps;
    if let Some(s) = from {
        match parse_endpoint(s) {
            Ok(r) => cfg.from = r,
            Err(e) => return usage_error(&e),
        }
    }
    if let Some(s) = to {
        match parse_endpoint(s) {
            Ok(r) => cfg.to = r,
            Err(e) => return usage_error(&e),
        }
    }
    if let Some(s) = width {
        match parse_width(s) {
            Ok(r) => cfg.trig_width = r,
            Err(e) => return usage_error(&e),
        }
    }
    let rows = match scan(&cfg) {
        Ok(rows) => rows,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rendered = match format {
        "csv" => rows_to_csv(&rows),
        "json" => rows_to_json(&rows),
        other => return usage_error(&format!("unknown format `{other}` (csv|json)")),
    };
    if let Err(e) = emit(out, &rendered) {
        return usage_error(&e);
    }
    let no = rows.iter().filter(|r| r.holds == Holds::No).count();
    let und = rows.iter().filter(|r| r.holds == Holds::Undecided).count();
    eprintln!(
        "{}: {} rows, {} hold, {} undecided, {} violated",
        id,
        rows.len(),
        rows.len() - no - und,
        und,
        no
    );
    if no > 0 {
        ExitCode::from(3)
    } else if und > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_limits(
    eps: &str,
    tol_zero: &str,
    tol_half_pi: &str,
    grid: usize,
    width: Option<&str>,
    out: &OutArg,
) -> ExitCode {
    let eps = match parse_rat(eps) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let tol_zero = match parse_rat(tol_zero) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let tol_half_pi = match parse_rat(tol_half_pi) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let width = match width {
        Some(s) => match parse_width(s) {
            Ok(r) => r,
            Err(e) => return usage_error(&e),
        },
        None => default_width(),
    };
    let report = match check_limits(&eps, &tol_zero, &tol_half_pi, &width) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mono = match monotonicity_spotcheck(&default_monotonicity_grid(grid), &width) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rendered = format!("{}{}", report.to_text(), mono.to_text());
    if let Err(e) = emit(out, &rendered) {
        return usage_error(&e);
    }
    let all_yes = report.near_zero.holds == Holds::Yes
        && report.near_half_pi.holds == Holds::Yes
        && mono.all_decreasing();
    let any_no = report.near_zero.holds == Holds::No
        || report.near_half_pi.holds == Holds::No
        || mono.pairs.iter().any(|p| p.holds == Holds::No);
    if all_yes {
        ExitCode::SUCCESS
    } else if any_no {
        ExitCode::from(3)
    } else {
        ExitCode::from(2)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Prove {
            theorem,
            pi_bits,
            format,
            out,
        } => run_prove(&theorem.theorem, *pi_bits, format, out),
        Command::Dump {
            theorem,
            poly,
            pi_bits,
            out,
        } => run_dump(&theorem.theorem, poly, *pi_bits, out),
        Command::Scan {
            theorem,
            from,
            to,
            steps,
            width,
            format,
            out,
        } => run_scan(
            &theorem.theorem,
            from.as_deref(),
            to.as_deref(),
            *steps,
            width.as_deref(),
            format,
            out,
        ),
        Command::Limits {
            eps,
            tol_zero,
            tol_half_pi,
            grid,
            width,
            out,
        } => run_limits(eps, tol_zero, tol_half_pi, *grid, width.as_deref(), out),
    }
}
