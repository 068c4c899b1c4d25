use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use factorlen::asymptotics::{asymptotic_constants, normalized_histogram, triangular_model};
use factorlen::constructions::{
    find_sqrt_d_params, mean_constant_inverse, pythagorean_semigroup, sqrt_d_semigroup,
    three_unit_fractions, unit_fraction_decomposition, SqrtDOutcome,
};
use factorlen::experiments::{
    convergence_sweep, default_grid, envelope_bounds, multi_generator_histogram,
    probe_median_period, probe_median_quasilinearity, verify_extremes, verify_mode_theorem,
    verify_structure_theorem, ProbeConfig,
};
use factorlen::invariants::invariant_report;
use factorlen::{length_multiset, Rational, Semigroup};

#[derive(Parser)]
#[command(name = "factorlen", version, about = "Factorization length statistics of numerical semigroups")]
struct Cli {
    /// Emit CSV instead of JSON where a table makes sense.
    #[arg(long, global = true)]
    csv: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for parallel scans; output does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Gens {
    /// Generators, comma separated, e.g. 6,9,20.
    #[arg(short, long = "semigroup", value_name = "LIST")]
    semigroup: Semigroup,
}

#[derive(Subcommand)]
enum Cmd {
    /// Min, max, mean, median and mode of the lengths of n.
    Invariants {
        #[command(flatten)]
        gens: Gens,
        #[arg(short)]
        n: u64,
    },
    /// Length multiplicities of n.
    Histogram {
        #[command(flatten)]
        gens: Gens,
        #[arg(short)]
        n: u64,
        /// Also list lengths of multiplicity zero between min and max.
        #[arg(long)]
        include_zeros: bool,
    },
    /// Limits of mean(n)/n and median(n)/n.
    Asymptotics {
        #[command(flatten)]
        gens: Gens,
    },
    /// Normalized histogram at k*s against the triangular density.
    Model {
        #[command(flatten)]
        gens: Gens,
        #[arg(short, default_value_t = 1)]
        k: u64,
    },
    /// Semigroups with prescribed median constants.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Unit-fraction decompositions of p/q.
    Egyptian {
        target: Rational,
        /// Largest number of terms for the shortest decomposition.
        #[arg(long, default_value_t = 4)]
        terms: usize,
        /// List every three-term decomposition and the matching semigroups.
        #[arg(long = "all-3")]
        all_3: bool,
    },
    /// Convergence of the normalized mean and median.
    Sweep {
        #[command(flatten)]
        gens: Gens,
        /// Sample points; defaults to elements nearest 10^2..10^5.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<u64>>,
    },
    /// Numerical checks; exit status 1 when one fails.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Full-enumeration histogram for four or more generators.
    Histo4 {
        #[command(flatten)]
        gens: Gens,
        #[arg(short)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum Family {
    /// <a^2-b^2, a^2, a^2+b^2> from a primitive triple.
    Pythagorean { a: u64, b: u64, c: u64 },
    /// <p^2-l, p^2, p^2+l> with p = floor(t*sqrt(d)).
    Sqrtd {
        d: u64,
        #[arg(required_unless_present = "t_max")]
        t: Option<u64>,
        /// Scan t = 1..=T instead of a single t.
        #[arg(long = "t-max")]
        t_max: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Mode frequency and mode lengths under n -> n + t.
    Mode {
        #[command(flatten)]
        gens: Gens,
        #[arg(long, default_value_t = 2000)]
        n_max: u64,
    },
    /// Length sets as progressions with end gaps.
    Structure {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Shift identities for the minimum and maximum length.
    Extremes {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Envelope bounds at k*s for k = 1..=K.
    Bounds {
        #[command(flatten)]
        gens: Gens,
        #[arg(short, default_value_t = 3)]
        k: u64,
    },
    /// Whether median(n + P) - median(n) is constant.
    Quasilinear {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        period: Option<u64>,
        #[arg(long, requires = "period")]
        lo: Option<u64>,
        #[arg(long, requires = "period")]
        hi: Option<u64>,
        /// Median evaluations allowed per period.
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
    },
}

struct Output {
    body: String,
    failed: bool,
}

impl Output {
    fn json<T: serde::Serialize>(v: T) -> factorlen::Result<Self> {
        let mut body = serde_json::to_string_pretty(&v).expect("serializable");
        body.push('\n');
        Ok(Output { body, failed: false })
    }

    fn text(body: String) -> factorlen::Result<Self> {
        Ok(Output { body, failed: false })
    }

    fn failing(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn with_constants(s: &Semigroup) -> factorlen::Result<Value> {
    Ok(json!({ "semigroup": s, "constants": asymptotic_constants(s)? }))
}

fn run(cli: &Cli) -> factorlen::Result<Output> {
    let csv = cli.csv;
    match &cli.cmd {
        Cmd::Invariants { gens, n } => {
            let r = invariant_report(&gens.semigroup, *n)?;
            if csv {
                let modes: Vec<String> = r.mode_lengths.iter().map(u64::to_string).collect();
                return Output::text(format!(
                    "n,min,max,mean,median,mode_lengths,mode_freq,num_factorizations\n{},{},{},{},{},{},{},{}\n",
                    r.n, r.min_len, r.max_len, r.mean, r.median, modes.join(" "), r.mode_freq, r.num_factorizations
                ));
            }
            Output::json(json!({ "semigroup": gens.semigroup, "report": r }))
        }
        Cmd::Histogram { gens, n, include_zeros } => {
            let ms = length_multiset(&gens.semigroup, *n)?;
            if csv {
                return Output::text(ms.to_csv(*include_zeros));
            }
            let mut v = to_value(&ms);
            if *include_zeros {
                let (lo, hi) = (ms.min().unwrap_or(0), ms.max().unwrap_or(0));
                v["histogram"] = (lo..=hi)
                    .map(|l| json!({ "length": l, "multiplicity": ms.multiplicity(l) }))
                    .collect();
            }
            Output::json(json!({ "semigroup": gens.semigroup, "n": n, "lengths": v }))
        }
        Cmd::Asymptotics { gens } => {
            let c = asymptotic_constants(&gens.semigroup)?;
            if csv {
                return Output::text(format!(
                    "F,mean_constant,median_constant,median_approx,median_is_rational,harmonic_case\n{},{},{},{},{},{}\n",
                    c.fulcrum,
                    c.mean_c,
                    c.median_c,
                    c.median_c.approx(),
                    c.is_median_rational,
                    c.harmonic_case
                ));
            }
            Output::json(json!({ "semigroup": gens.semigroup, "constants": c }))
        }
        Cmd::Model { gens, k } => {
            let h = normalized_histogram(&gens.semigroup, *k)?;
            let model = triangular_model(&asymptotic_constants(&gens.semigroup)?.fulcrum)?;
            if csv {
                let mut out = String::from("x,empirical,model\n");
                for p in &h.points {
                    out.push_str(&format!("{},{},{}\n", p.x.to_f64(), p.density.to_f64(), model.density(&p.x).to_f64()));
                }
                return Output::text(out);
            }
            Output::json(json!({
                "semigroup": gens.semigroup,
                "k": k,
                "element": h.seq.element(),
                "model": model,
                "mode_x": h.mode_x,
                "mass": h.mass(),
                "sup_deviation": h.sup_deviation(&model).to_f64(),
                "points": h.points.iter().map(|p| json!({
                    "x": p.x, "empirical": p.density.to_f64(), "model": model.density(&p.x).to_f64()
                })).collect::<Vec<_>>(),
            }))
        }
        Cmd::Construct { family } => match family {
            Family::Pythagorean { a, b, c } => {
                let s = pythagorean_semigroup(*a, *b, *c)?;
                Output::json(with_constants(&s)?)
            }
            Family::Sqrtd { d, t, t_max } => {
                if let Some(t_max) = t_max {
                    let ts = find_sqrt_d_params(*d, *t_max)?;
                    let found = ts
                        .iter()
                        .map(|&t| {
                            let out = sqrt_d_semigroup(*d, t)?;
                            let s = out.semigroup().expect("accepted").clone();
                            Ok(json!({ "t": t, "outcome": out, "constants": asymptotic_constants(&s)? }))
                        })
                        .collect::<factorlen::Result<Vec<_>>>()?;
                    return Output::json(json!({ "d": d, "t_max": t_max, "accepted": found }));
                }
                let out = sqrt_d_semigroup(*d, t.expect("required by clap"))?;
                let constants = match &out {
                    SqrtDOutcome::Accepted { semigroup, .. } => Some(asymptotic_constants(semigroup)?),
                    SqrtDOutcome::Rejected { .. } => None,
                };
                Output::json(json!({ "outcome": out, "constants": constants }))
            }
        },
        Cmd::Egyptian { target, terms, all_3 } => {
            let shortest = unit_fraction_decomposition(target, *terms)?;
            if csv {
                let mut out = String::from("denominators\n");
                let rows = if *all_3 { three_unit_fractions(target, true)? } else { shortest.into_iter().collect() };
                for s in rows {
                    let ds: Vec<String> = s.denominators.iter().map(u64::to_string).collect();
                    out.push_str(&ds.join(" "));
                    out.push('\n');
                }
                return Output::text(out);
            }
            let mut v = json!({ "target": target, "max_terms": terms, "shortest": shortest });
            if *all_3 {
                v["three_term"] = to_value(three_unit_fractions(target, true)?);
                let third = target.checked_div(&Rational::integer(3))?;
                v["mean_inverse"] = match mean_constant_inverse(&third) {
                    Ok(found) => to_value(found),
                    Err(_) => Value::Null,
                };
            }
            Output::json(v)
        }
        Cmd::Sweep { gens, points } => {
            let pts = points.clone().unwrap_or_else(|| default_grid(&gens.semigroup));
            let sweep = convergence_sweep(&gens.semigroup, &pts)?;
            if csv {
                return Output::text(sweep.to_csv());
            }
            Output::json(sweep)
        }
        Cmd::Verify { check } => verify(check, csv),
        Cmd::Histo4 { gens, n } => {
            let r = multi_generator_histogram(&gens.semigroup, *n)?;
            if csv {
                return Output::text(r.histogram.to_csv(true));
            }
            Output::json(r)
        }
    }
}

fn verify(check: &Check, csv: bool) -> factorlen::Result<Output> {
    match check {
        Check::Mode { gens, n_max } => {
            let r = verify_mode_theorem(&gens.semigroup, *n_max)?;
            let failed = !r.passed();
            let out = if csv {
                let mut s = String::from("residue,offset\n");
                for e in &r.residuals {
                    let vs: Vec<String> = e.values.iter().map(Rational::to_string).collect();
                    s.push_str(&format!("{},{}\n", e.residue, vs.join(" ")));
                }
                Output::text(s)?
            } else {
                Output::json(json!({ "passed": !failed, "report": r }))?
            };
            Ok(out.failing(failed))
        }
        Check::Structure { gens, lo, hi } => {
            let r = verify_structure_theorem(&gens.semigroup, *lo, *hi)?;
            let failed = !r.passed();
            let out = if csv {
                let mut s = String::from("n,min,max,low_extent,high_extent\n");
                for p in &r.profiles {
                    s.push_str(&format!("{},{},{},{},{}\n", p.n, p.min, p.max, p.low_extent, p.high_extent));
                }
                Output::text(s)?
            } else {
                Output::json(json!({ "passed": !failed, "report": r }))?
            };
            Ok(out.failing(failed))
        }
        Check::Extremes { gens, lo, hi } => {
            let r = verify_extremes(&gens.semigroup, *lo, *hi)?;
            let failed = !r.passed();
            Ok(Output::json(json!({ "passed": !failed, "report": r }))?.failing(failed))
        }
        Check::Bounds { gens, k } => {
            let r = envelope_bounds(&gens.semigroup, *k)?;
            let failed = !r.passed();
            Ok(Output::json(json!({ "passed": !failed, "report": r }))?.failing(failed))
        }
        Check::Quasilinear { gens, period, lo, hi, budget } => {
            let s = &gens.semigroup;
            let v = match period {
                Some(p) => {
                    let lo = lo.unwrap_or(s.largest().saturating_pow(3));
                    let hi = hi.unwrap_or(lo + 3 * p);
                    probe_median_period(s, *p, lo, hi, *budget)?
                }
                None => probe_median_quasilinearity(s, &ProbeConfig { budget: *budget, ..ProbeConfig::default() })?,
            };
            if csv {
                let mut out = String::from("period,lo,hi,constant,witness\n");
                for a in &v.attempts {
                    let constant = a.constant_diff.map_or("skipped".to_string(), |c| c.to_string());
                    let witness = a.witness.map_or(String::new(), |w| w.to_string());
                    out.push_str(&format!("{},{},{},{},{}\n", a.period, a.window.0, a.window.1, constant, witness));
                }
                return Output::text(out);
            }
            Output::json(v)
        }
    }
}

fn emit(path: Option<&PathBuf>, body: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(cli.out.as_ref(), &out.body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
