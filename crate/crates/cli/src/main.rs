//! `affchar`: exact character, structure and singular-vector computations
//! for the affine sl(2) algebra at fractional level.

use std::process::ExitCode;

use affchar_cli::{criteria, json, render};
use affchar_core::branching::{branching_alt, branching_function, verify_branching};
use affchar_core::characters::{
    admissible_char, integer_level_char, irr_char, kac_char, kac_decompose, staggered_char_closed,
    string_function, verma_char,
};
use affchar_core::phi::{phi_char, phi_irr_table, phi_kac, vir_character};
use affchar_core::rat::{from_frac_str, rint, to_frac_string};
use affchar_core::structure::{
    kac_loewy, staggered_nodes, staggered_pair, verma_loewy, wakimoto_display, LoewyDiagram,
    StaggeredDescriptor,
};
use affchar_core::uea::{
    element_from_vector, example_from_descriptor, example_i, example_ii, find_singular,
    staggered_solve, weight_space_basis, HwModule,
};
use affchar_core::weights::{kac_table, KacLabel, Level};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "affchar", about = "Exact affine sl(2) characters at fractional level", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct LevelArgs {
    /// Numerator of the shifted level t = p/p'
    #[arg(long)]
    p: i64,
    /// Denominator of the shifted level
    #[arg(long)]
    pp: i64,
}

impl LevelArgs {
    fn level(&self) -> Result<Level, String> {
        if self.p < 1 || self.pp < 1 {
            return Err("p and p' must be positive".into());
        }
        if num_integer::gcd(self.p, self.pp) != 1 {
            return Err("p and p' must be coprime".into());
        }
        Ok(Level::new(self.p, self.pp))
    }
}

fn default_qmax() -> i64 {
    std::env::var("AFFCHAR_QMAX_DEFAULT").ok().and_then(|v| v.parse().ok()).unwrap_or(10)
}

#[derive(Subcommand)]
enum Command {
    /// Print the extended Kac table of weights with markers
    KacTable {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 6)]
        rmax: i64,
        #[arg(long, default_value_t = -5)]
        smin: i64,
        #[arg(long, default_value_t = 5)]
        smax: i64,
        #[arg(long)]
        json: bool,
    },
    /// Expand a character as an exact truncated series
    Char {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, value_enum)]
        kind: CharKind,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
        /// Highest weight j as "num/den" (verma only, alternative to labels)
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
        /// Integer level and indices for string functions
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        ell: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        /// Staggered descriptor parameters
        #[arg(long)]
        conjecture: Option<u8>,
        #[arg(long)]
        param_a: Option<i64>,
        #[arg(long)]
        param_b: Option<i64>,
        #[arg(long, default_value_t = 1)]
        param_ell: i64,
        #[arg(long, default_value = "+")]
        sign: String,
        #[arg(long)]
        qmax: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        zmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        zmax: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a Kac character into irreducible characters
    Decompose {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        json: bool,
    },
    /// Loewy diagrams of Verma, Kac or (display-only) Wakimoto modules
    Loewy {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, value_enum)]
        kind: LoewyKind,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, default_value_t = 4)]
        depth: i64,
        #[arg(long)]
        json: bool,
    },
    /// Coset branching functions and rule verification
    Branch {
        #[command(subcommand)]
        what: BranchCommand,
    },
    /// The residue map on characters, or the functor on modules
    Phi {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, value_enum)]
        kind: PhiKind,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        qmax: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Kernel search for singular vectors
    Singular {
        #[command(flatten)]
        level: LevelArgs,
        /// Highest weight as "num/den"
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        charge: i64,
        #[arg(long)]
        grade: i64,
        /// Quotient by the singular vectors at these positions ("Q,N", repeatable)
        #[arg(long)]
        quotient: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Solve a staggered-module instance for its coupling constant
    StaggeredBeta {
        /// "I", "II", or a JSON file {p, pp, conjecture, params, sign}
        #[arg(long)]
        example: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the full verification suite
    VerifyAll {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum BranchCommand {
    /// Verify the branching rule for one key
    Verify {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        rho: i64,
        #[arg(long)]
        qmax: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Compute one branching function
    Fn {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        rho: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[arg(long)]
        qmax: Option<i64>,
        /// Use the reciprocal-based route instead of string functions
        #[arg(long)]
        alt: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CharKind {
    Verma,
    Kac,
    Irr,
    Admissible,
    Staggered,
    String,
    IntegerLevel,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoewyKind {
    Verma,
    Kac,
    Wakimoto,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiKind {
    Char,
    Module,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn staggered_descriptor_from_args(
    level: &Level,
    conjecture: u8,
    param_a: Option<i64>,
    param_b: Option<i64>,
    ell: i64,
    sign: &str,
) -> Result<StaggeredDescriptor, String> {
    let params = match conjecture {
        1 => (
            param_a.ok_or("conjecture 1 needs --param-a")?,
            param_b.unwrap_or(0),
            ell,
        ),
        2 => (
            param_a.ok_or("conjecture 2 needs --param-a (r0)")?,
            param_b.ok_or("conjecture 2 needs --param-b")?,
            ell,
        ),
        3 => (level.p(), param_b.ok_or("conjecture 3 needs --param-b")?, ell),
        _ => return Err("conjecture must be 1, 2 or 3".into()),
    };
    let (plus, minus) =
        staggered_pair(level, conjecture, params).map_err(|e| format!("{e:?}"))?;
    Ok(match sign {
        "+" | "plus" => plus,
        "-" | "minus" => minus,
        other => return Err(format!("sign must be + or -, got {other}")),
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::KacTable { level, rmax, smin, smax, json: as_json } => {
            let lv = level.level()?;
            let cells = kac_table(&lv, (-rmax, rmax), (smin, smax));
            if as_json {
                println!("{}", serde_json::to_string_pretty(&json::kac_table(&lv, &cells)).unwrap());
            } else {
                print!("{}", render::kac_table(&lv, &cells));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Char {
            level,
            kind,
            r,
            s,
            j,
            n,
            ell,
            m,
            conjecture,
            param_a,
            param_b,
            param_ell,
            sign,
            qmax,
            zmin,
            zmax,
            json: as_json,
        } => {
            let lv = level.level()?;
            let q_max = qmax.unwrap_or_else(default_qmax);
            let z_lo = rint(zmin.unwrap_or(-q_max / 2 - 4));
            let z_hi = rint(zmax.unwrap_or(q_max / 2 + 4));
            let need_label = || -> Result<KacLabel, String> {
                Ok(KacLabel::new(
                    r.ok_or("missing --r")?,
                    s.ok_or("missing --s")?,
                ))
            };
            match kind {
                CharKind::String => {
                    let n = n.ok_or("string kind needs --n")?;
                    let series = string_function(
                        n,
                        ell.ok_or("string kind needs --ell")?,
                        m.ok_or("string kind needs --m")?,
                        q_max,
                    );
                    if as_json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json::qseries(&series)).unwrap()
                        );
                    } else {
                        print!("{}", render::leading_terms_q(&series, 12));
                    }
                    return Ok(ExitCode::SUCCESS);
                }
                CharKind::IntegerLevel => {
                    let n = n.ok_or("integer-level kind needs --n")?;
                    let rho = r.ok_or("integer-level kind needs --r (rho)")?;
                    let series = integer_level_char(n, rho).expand(q_max, &z_lo, &z_hi);
                    emit_biseries(&series, as_json);
                    return Ok(ExitCode::SUCCESS);
                }
                _ => {}
            }
            let cf = match kind {
                CharKind::Verma => {
                    let weight = match j {
                        Some(txt) => from_frac_str(&txt).ok_or("bad --j fraction")?,
                        None => {
                            let label = need_label()?;
                            lv.j(label.r, label.s)
                        }
                    };
                    verma_char(&lv, &weight)
                }
                CharKind::Kac => {
                    kac_char(&lv, need_label()?).map_err(|e| format!("{e:?}"))?
                }
                CharKind::Irr => {
                    irr_char(&lv, need_label()?).map_err(|e| format!("{e:?}"))?
                }
                CharKind::Admissible => {
                    let label = need_label()?;
                    admissible_char(&lv, label.r, label.s)
                }
                CharKind::Staggered => {
                    let conjecture = conjecture.ok_or("staggered kind needs --conjecture")?;
                    let desc = staggered_descriptor_from_args(
                        &lv, conjecture, param_a, param_b, param_ell, &sign,
                    )?;
                    println!("{}", desc.name);
                    staggered_char_closed(&lv, &desc)
                }
                CharKind::String | CharKind::IntegerLevel => unreachable!(),
            };
            let series = cf.expand(q_max, &z_lo, &z_hi);
            emit_biseries(&series, as_json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { level, r, s, json: as_json } => {
            let lv = level.level()?;
            let labels =
                kac_decompose(&lv, KacLabel::new(r, s)).map_err(|e| format!("{e:?}"))?;
            if as_json {
                let arr: Vec<_> = labels.iter().map(|l| serde_json::json!([l.r, l.s])).collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({"factors": arr})).unwrap()
                );
            } else {
                println!("chi_({r},{s}) decomposes into {} irreducible(s):", labels.len());
                for l in labels {
                    let c = affchar_core::weights::canonical_label(&lv, l);
                    println!(
                        "  ch_({},{})  [j = {}]",
                        c.r,
                        c.s,
                        to_frac_string(&lv.j(c.r, c.s))
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Loewy { level, kind, r, s, depth, json: as_json } => {
            let lv = level.level()?;
            let label = KacLabel::new(r, s);
            let diagrams: Vec<LoewyDiagram> = match kind {
                LoewyKind::Verma => {
                    vec![verma_loewy(&lv, label, depth).map_err(|e| format!("{e:?}"))?]
                }
                LoewyKind::Kac => vec![kac_loewy(&lv, label).map_err(|e| format!("{e:?}"))?],
                LoewyKind::Wakimoto => {
                    wakimoto_display(&lv, label, depth).map_err(|e| format!("{e:?}"))?
                }
            };
            for d in &diagrams {
                if as_json {
                    println!("{}", serde_json::to_string_pretty(&json::loewy(d)).unwrap());
                } else {
                    print!("{}", render::loewy(d));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Branch { what } => match what {
            BranchCommand::Verify { level, n, r, s, rho, qmax, json: as_json } => {
                let lv = level.level()?;
                let q_max = qmax.unwrap_or_else(default_qmax);
                let rep = verify_branching(&lv, n, r, s, rho, q_max)
                    .map_err(|e| format!("{e:?}"))?;
                if as_json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "key": {"p": lv.p(), "pp": lv.pp(), "n": n, "r": r, "s": s, "rho": rho},
                            "qmax": q_max,
                            "equal": rep.equal,
                        }))
                        .unwrap()
                    );
                } else if rep.equal {
                    println!("PASS: branching rule holds for (r,s)=({r},{s}), rho={rho}, n={n} to order {q_max}");
                } else {
                    println!("FAIL: first discrepancy {:?}", rep.discrepancy);
                }
                Ok(if rep.equal { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
            BranchCommand::Fn { level, n, r, s, rho, sigma, qmax, alt, json: as_json } => {
                let lv = level.level()?;
                let q_max = qmax.unwrap_or_else(default_qmax);
                let series = if alt {
                    branching_alt(&lv, n, r, s, rho, sigma, q_max)
                } else {
                    branching_function(&lv, n, r, s, rho, sigma, q_max)
                }
                .map_err(|e| format!("{e:?}"))?;
                if as_json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "key": {"p": lv.p(), "pp": lv.pp(), "n": n, "r": r, "s": s,
                                     "rho": rho, "sigma": sigma},
                            "series": json::qseries(&series),
                        }))
                        .unwrap()
                    );
                } else {
                    print!("{}", render::leading_terms_q(&series, 12));
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Phi { level, kind, r, s, qmax, json: as_json } => {
            let lv = level.level()?;
            let q_max = qmax.unwrap_or_else(default_qmax);
            let label = KacLabel::new(r, s);
            match kind {
                PhiKind::Char => {
                    let series = if label.is_valid() {
                        phi_char(&kac_char(&lv, label).map_err(|e| format!("{e:?}"))?, q_max)
                    } else {
                        phi_irr_table(&lv, label, q_max)
                    };
                    if as_json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json::qseries(&series)).unwrap()
                        );
                    } else {
                        print!("{}", render::leading_terms_q(&series, 12));
                    }
                }
                PhiKind::Module => {
                    let d = kac_loewy(&lv, label).map_err(|e| format!("{e:?}"))?;
                    let img = phi_kac(&lv, label, &d);
                    let nodes: Vec<_> = d.nodes.iter().map(|n| (n.label, n.shade)).collect();
                    if as_json {
                        let surv: Vec<_> = img
                            .nodes
                            .iter()
                            .map(|(l, sh)| serde_json::json!([l.r, l.s, json::shade(*sh)]))
                            .collect();
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&serde_json::json!({
                                "kind": format!("{:?}", img.kind),
                                "deleted": img.deleted,
                                "nodes": surv,
                                "character": json::qseries(&vir_character(&lv, &img, q_max)),
                            }))
                            .unwrap()
                        );
                    } else {
                        print!("{}", render::phi_image(&nodes, &img));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Singular { level, j, charge, grade, quotient, json: as_json } => {
            let lv = level.level()?;
            let weight = from_frac_str(&j).ok_or("bad --j fraction")?;
            let verma = HwModule::verma(lv.clone(), weight.clone());
            let mut killed = Vec::new();
            for spec in &quotient {
                let (q, n) = spec
                    .split_once(',')
                    .ok_or("quotient positions are written Q,N")?;
                let q: i64 = q.trim().parse().map_err(|_| "bad quotient charge")?;
                let n: i64 = n.trim().parse().map_err(|_| "bad quotient grade")?;
                let sing = find_singular(&verma, q, n);
                if sing.len() != 1 {
                    return Err(format!(
                        "quotient position ({q},{n}) has {} singular vector(s)",
                        sing.len()
                    ));
                }
                killed.extend(sing);
            }
            let module = if killed.is_empty() {
                verma
            } else {
                HwModule::quotient(lv.clone(), weight.clone(), killed)
            };
            let kernel = find_singular(&module, charge, grade);
            if as_json {
                let basis = weight_space_basis(charge, grade);
                let vecs: Vec<_> = kernel
                    .iter()
                    .map(|v| {
                        let entries: Vec<_> = v
                            .coords
                            .iter()
                            .zip(&basis)
                            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
                            .map(|(c, w)| {
                                serde_json::json!({
                                    "monomial": w.iter().map(|g| format!("{g:?}")).collect::<Vec<_>>(),
                                    "coeff": to_frac_string(c),
                                })
                            })
                            .collect();
                        serde_json::json!(entries)
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "j": to_frac_string(&weight),
                        "charge": charge,
                        "grade": grade,
                        "dimension": kernel.len(),
                        "vectors": vecs,
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "singular vectors at charge {charge}, grade {grade} over |{}>: {}",
                    to_frac_string(&weight),
                    kernel.len()
                );
                for v in &kernel {
                    let elem = element_from_vector(&lv.k(), v);
                    for (w, c) in elem.terms() {
                        println!("  {:>12}  {:?}", to_frac_string(c), w);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::StaggeredBeta { example, json: as_json } => {
            let ex = match example.as_str() {
                "I" | "i" => example_i(),
                "II" | "ii" => example_ii(),
                path => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {path}: {e}"))?;
                    let v: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| format!("bad JSON: {e}"))?;
                    custom_example(&v)?
                }
            };
            let sol = staggered_solve(&ex).map_err(|e| format!("{e:?}"))?;
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "example": ex.name,
                        "eta": to_frac_string(&sol.eta),
                        "mu": to_frac_string(&sol.mu),
                        "beta": sol.beta.as_ref().map(to_frac_string),
                        "position": [sol.position.0, sol.position.1],
                        "solution_dim": sol.solution_dim,
                    }))
                    .unwrap()
                );
            } else {
                println!("example {}:", ex.name);
                println!("  position (Q, N) = ({}, {})", sol.position.0, sol.position.1);
                println!("  eta = {}", to_frac_string(&sol.eta));
                println!("  mu  = {}", to_frac_string(&sol.mu));
                match &sol.beta {
                    Some(b) => println!("  beta = {}", to_frac_string(b)),
                    None => println!("  beta undefined (triangular: S = identity)"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAll { json: as_json } => {
            let results = criteria::run_all();
            let mut all = true;
            if as_json {
                let arr: Vec<_> = results
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "criterion": r.name,
                            "passed": r.passed,
                            "detail": r.detail,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&serde_json::json!(arr)).unwrap());
                all = results.iter().all(|r| r.passed);
            } else {
                for r in &results {
                    println!("{} — {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                    all &= r.passed;
                }
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn emit_biseries(series: &affchar_core::series::BiSeries, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&json::biseries(series)).unwrap());
    } else {
        print!("{}", render::leading_terms(series, 16));
    }
}

fn custom_example(v: &serde_json::Value) -> Result<affchar_core::uea::StaggeredExample, String> {
    let p = v["p"].as_i64().ok_or("missing p")?;
    let pp = v["pp"].as_i64().ok_or("missing pp")?;
    let conjecture = v["conjecture"].as_u64().ok_or("missing conjecture")? as u8;
    let params = v["params"].as_array().ok_or("missing params")?;
    let sign = v["sign"].as_str().unwrap_or("+");
    let lv = Level::new(p, pp);
    let tuple = match (conjecture, params.len()) {
        (1, 3) | (2, 3) => (
            params[0].as_i64().ok_or("bad param")?,
            params[1].as_i64().ok_or("bad param")?,
            params[2].as_i64().ok_or("bad param")?,
        ),
        (3, 2) => (
            lv.p(),
            params[0].as_i64().ok_or("bad param")?,
            params[1].as_i64().ok_or("bad param")?,
        ),
        _ => return Err("params must be [a,s0,ell], [r0,b,ell] or [b,ell]".into()),
    };
    let (plus, minus) =
        staggered_pair(&lv, conjecture, tuple).map_err(|e| format!("{e:?}"))?;
    let desc = if sign == "-" { minus } else { plus };
    // sanity: print the node content for context
    let _ = staggered_nodes(&lv, &desc);
    example_from_descriptor(&lv, &desc).map_err(|e| format!("{e:?}"))
}
