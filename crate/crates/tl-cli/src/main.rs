//! `tl`: compute, verify, and render the q = 0 diagram calculus, the
//! crystal side, and the functor between them. JSON output by default;
//! exit code 0 on success/verified, 1 on verification failure, 2 on usage
//! errors.

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tlzero::commutor;
use tlzero::crystal;
use tlzero::diagram::{enumerate, EnumMode};
use tlzero::fiber;
use tlzero::functor;
use tlzero::json as js;
use tlzero::jw;
use tlzero::morphism::{Morphism, ParamContext};
use tlzero::scalar::parse_rat;
use tlzero::semisimple;
use tlzero::{catalan, checks, Diagram};

#[derive(Parser)]
#[command(
    name = "tl",
    about = "Exact Temperley-Lieb / crystal calculus at q = 0",
    version
)]
struct Cli {
    /// Output format for values and renderings.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "ascii", "tikz"], visible_alias = "render")]
    format: String,

    /// Parameter context: `generic`, `0`, or a rational `p/q` (bar
    /// specialization at that value).
    #[arg(long, global = true, default_value = "0")]
    param: String,

    /// Override the default size bound of verification suites.
    #[arg(long, global = true)]
    max: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of Hom(m, n): the Catalan number C_{(m+n)/2}.
    Dims {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate the diagram basis of Hom(m, n) or the cap diagrams D_n.
    Enumerate {
        /// `hom` or `caps`.
        #[arg(long, default_value = "hom", value_parser = ["hom", "caps"])]
        mode: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compose two morphisms (g after f), inline JSON or @file.
    Compose {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// The n-th Jones-Wenzl projector at q = 0.
    Jw {
        #[arg(long)]
        n: usize,
    },
    /// Max-summand morphism of a diagram, or hat-expand a morphism.
    Hat {
        /// Diagram JSON (inline or @file) to take hat of.
        #[arg(long, conflicts_with = "expand")]
        diagram: Option<String>,
        /// Morphism JSON to expand in the hat basis.
        #[arg(long)]
        expand: Option<String>,
    },
    /// Semisimple block decomposition of End(m).
    Blocks {
        #[arg(long)]
        m: usize,
    },
    /// Moebius bracket [x] of an End-shaped diagram.
    Mobius {
        #[arg(long)]
        diagram: String,
    },
    /// Connected components of the n-th tensor power crystal.
    CrystalComponents {
        #[arg(long)]
        n: usize,
    },
    /// Decompose the tensor product of two path crystals.
    CrystalTensor {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        mu: usize,
    },
    /// Apply the functor to a morphism (sparse triplet dump) or check its
    /// rank against the Catalan dimension on Hom(m, n).
    FunctorCheck {
        #[arg(long, conflicts_with_all = ["m", "n"])]
        morphism: Option<String>,
        #[arg(long, requires = "n")]
        m: Option<usize>,
        #[arg(long, requires = "m")]
        n: Option<usize>,
    },
    /// The commutor sigma(m, n) with its strand permutation.
    Sigma {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// `diagram` or `hat` expansion of the output.
        #[arg(long, default_value = "diagram", value_parser = ["diagram", "hat"])]
        basis: String,
    },
    /// The interval reversal s_{p,q} on n strands.
    IntervalReversal {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "diagram", value_parser = ["diagram", "hat"])]
        basis: String,
    },
    /// Apply a word of interval reversals, or verify the cactus relations.
    CactusCheck {
        #[arg(long)]
        n: usize,
        /// Word like "1:3,2:4" ((p,q) pairs applied left to right).
        #[arg(long)]
        word: Option<String>,
    },
    /// Validate a fiber datum {"b": [[..]], "t": [[..]]}.
    FiberValidate {
        #[arg(long)]
        input: String,
    },
    /// Characteristic-polynomial orbit invariants of a fiber triple over
    /// the canonical J_2-block form.
    FiberInvariant {
        #[arg(long)]
        input: String,
    },
    /// Run a verification suite.
    Verify {
        /// all | basis | jw | semisimple | mobius | commutor | coboundary | fiber
        #[arg(value_parser = ["all", "basis", "jw", "semisimple", "mobius", "commutor", "coboundary", "fiber"])]
        suite: String,
    },
    /// Render a diagram or morphism (JSON in, --format out).
    Render {
        #[arg(long)]
        input: String,
    },
}

fn read_arg(s: &str) -> Result<String, String> {
    if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    } else {
        Ok(s.to_string())
    }
}

fn parse_value(s: &str) -> Result<Value, String> {
    let raw = read_arg(s)?;
    serde_json::from_str(&raw).map_err(|e| format!("invalid JSON: {e}"))
}

fn parse_context(param: &str) -> Result<ParamContext, String> {
    if param == "generic" {
        return Ok(ParamContext::Generic);
    }
    let a = parse_rat(param).map_err(|e| e.to_string())?;
    Ok(ParamContext::BarAt(a))
}

/// Accept either a morphism JSON or a bare diagram JSON (wrapped with the
/// context from --param).
fn parse_morphism(v: &Value, ctx: &ParamContext) -> Result<Morphism, String> {
    if v.get("terms").is_some() {
        js::morphism_from_json(v).map_err(|e| e.to_string())
    } else {
        let d = js::diagram_from_json(v).map_err(|e| e.to_string())?;
        Ok(Morphism::diagram(d, ctx.clone()))
    }
}

fn parse_diagram(s: &str) -> Result<Diagram, String> {
    let v = parse_value(s)?;
    js::diagram_from_json(&v).map_err(|e| e.to_string())
}

fn emit_morphism(f: &Morphism, format: &str) {
    println!("{}", render::morphism_render(f, format));
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let ctx = parse_context(&cli.param)?;
    match cli.command {
        Command::Dims { m, n } => {
            let dim = if (m + n) % 2 == 0 {
                catalan((m + n) / 2)
            } else {
                0
            };
            println!("{}", json!({ "m": m, "n": n, "dim": dim }));
        }
        Command::Enumerate { mode, m, n } => {
            let mode = match mode.as_str() {
                "hom" => EnumMode::Hom(m, n),
                _ => EnumMode::CapDiagrams(n),
            };
            let diagrams = enumerate(mode).map_err(|e| e.to_string())?;
            if cli.format == "json" {
                let list: Vec<Value> = diagrams.iter().map(js::diagram_to_json).collect();
                println!("{}", json!({ "count": diagrams.len(), "diagrams": list }));
            } else {
                println!("count: {}", diagrams.len());
                for d in &diagrams {
                    println!("{}\n", render::diagram_render(d, &cli.format));
                }
            }
        }
        Command::Compose { g, f } => {
            let g = parse_morphism(&parse_value(&g)?, &ctx)?;
            let f = parse_morphism(&parse_value(&f)?, &ctx)?;
            let composed = g.compose(&f).map_err(|e| e.to_string())?;
            emit_morphism(&composed, &cli.format);
        }
        Command::Jw { n } => emit_morphism(&jw::jw(n), &cli.format),
        Command::Hat { diagram, expand } => match (diagram, expand) {
            (Some(d), None) => {
                let d = parse_diagram(&d)?;
                emit_morphism(&semisimple::hat(&d).value, &cli.format);
            }
            (None, Some(f)) => {
                let f = parse_morphism(&parse_value(&f)?, &ParamContext::bar_zero())?;
                let expansion = semisimple::expand_hat(&f);
                let terms: Vec<Value> = expansion
                    .iter()
                    .map(|(d, c)| {
                        let mut entry = json!({
                            "coeff": c.constant_term().to_string(),
                            "diagram": js::diagram_to_json(d),
                        });
                        if let Some(l) = semisimple::label_of(d) {
                            entry["label"] = json!({ "k": l.k, "a": l.a, "b": l.b });
                        }
                        entry
                    })
                    .collect();
                println!("{}", json!({ "hat_terms": terms }));
            }
            _ => return Err("hat needs exactly one of --diagram / --expand".into()),
        },
        Command::Blocks { m } => {
            let blocks = semisimple::end_block_decomposition(m);
            let sum: u128 = blocks.iter().map(|&(_, r)| (r * r) as u128).sum();
            println!(
                "{}",
                json!({ "m": m, "blocks": blocks, "sum_of_squares": sum, "catalan": catalan(m) })
            );
        }
        Command::Mobius { diagram } => {
            let d = parse_diagram(&diagram)?;
            let x = semisimple::MonoidElement::diagram(d).map_err(|e| e.to_string())?;
            let bracket = semisimple::mobius_bracket(&x).map_err(|e| e.to_string())?;
            emit_morphism(&bracket, &cli.format);
        }
        Command::CrystalComponents { n } => {
            let comps = crystal::components(n).map_err(|e| e.to_string())?;
            if cli.format == "json" {
                let list: Vec<Value> = comps
                    .iter()
                    .map(|c| {
                        json!({
                            "highest_weight": c.highest_weight(),
                            "chain": c.chain.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", json!({ "n": n, "components": list }));
            } else {
                for c in &comps {
                    println!("component, highest weight {}", c.highest_weight());
                    for w in c.chain.windows(2) {
                        println!("  {} -f-> {}", w[0], w[1]);
                    }
                    if c.chain.len() == 1 {
                        println!("  {}", c.chain[0]);
                    }
                }
            }
        }
        Command::CrystalTensor { lambda, mu } => {
            let summands = crystal::tensor_decompose(lambda, mu);
            println!(
                "{}",
                json!({ "lambda": lambda, "mu": mu, "summands": summands })
            );
        }
        Command::FunctorCheck { morphism, m, n } => match (morphism, m, n) {
            (Some(f), _, _) => {
                let f = parse_morphism(&parse_value(&f)?, &ParamContext::bar_zero())?;
                let image = functor::apply_f(&f).map_err(|e| e.to_string())?;
                println!("{}", js::crystal_matrix_to_json(&image));
            }
            (None, Some(m), Some(n)) => {
                if (m + n) % 2 != 0 {
                    return Err("m + n must be even".into());
                }
                let rank = functor::rank_of_hom_span(m, n);
                let want = catalan((m + n) / 2);
                let ok = rank as u128 == want;
                println!(
                    "{}",
                    json!({ "m": m, "n": n, "rank": rank, "catalan": want, "ok": ok })
                );
                if !ok {
                    return Ok(ExitCode::from(1));
                }
            }
            _ => return Err("functor-check needs --morphism or both --m and --n".into()),
        },
        Command::Sigma { m, n, basis } => {
            let s = commutor::sigma(m, n);
            let perm: Vec<usize> = (1..=m + n)
                .map(|i| if i <= m { i + n } else { i - m })
                .collect();
            emit_sigma_like(&s, &perm, &basis, &cli.format)?;
        }
        Command::IntervalReversal { p, q, n, basis } => {
            let s = commutor::interval_reversal(p, q, n).map_err(|e| e.to_string())?;
            let perm = commutor::cactus_permutation(p, q, n);
            emit_sigma_like(&s, &perm, &basis, &cli.format)?;
        }
        Command::CactusCheck { n, word } => match word {
            Some(w) => {
                let word = parse_word(&w)?;
                let (morphism, perm) =
                    commutor::cactus_apply(&word, n).map_err(|e| e.to_string())?;
                emit_sigma_like(&morphism, &perm, "diagram", &cli.format)?;
            }
            None => {
                let bound = cli.max.unwrap_or(5).min(n);
                match checks::check_cactus_relations(bound) {
                    Ok(detail) => println!("{}", json!({ "ok": true, "details": detail })),
                    Err(detail) => {
                        println!("{}", json!({ "ok": false, "details": detail }));
                        return Ok(ExitCode::from(1));
                    }
                }
            }
        },
        Command::FiberValidate { input } => {
            let v = parse_value(&input)?;
            let (b, t) = js::fiber_pair_from_json(&v).map_err(|e| e.to_string())?;
            match fiber::validate_triple(b, t) {
                Ok(triple) => {
                    let (l, r) = fiber::radicals(triple.form());
                    println!(
                        "{}",
                        json!({
                            "valid": true,
                            "dim": triple.dim(),
                            "left_radical_dim": l.len(),
                            "right_radical_dim": r.len(),
                        })
                    );
                }
                Err(e) => {
                    println!("{}", json!({ "valid": false, "reason": e.to_string() }));
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::FiberInvariant { input } => {
            let v = parse_value(&input)?;
            let (b, t) = js::fiber_pair_from_json(&v).map_err(|e| e.to_string())?;
            let triple = fiber::validate_triple(b, t).map_err(|e| e.to_string())?;
            let inv = fiber::orbit_invariant(&triple).map_err(|e| e.to_string())?;
            let coeffs: Vec<String> = inv.iter().map(|c| c.to_string()).collect();
            println!("{}", json!({ "charpoly_coefficients": coeffs }));
        }
        Command::Verify { suite } => {
            let results = checks::run_suite(&suite, cli.max).ok_or("unknown suite")?;
            let mut all_pass = true;
            for c in &results {
                println!(
                    "{} {} - {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.details
                );
                all_pass &= c.pass;
            }
            println!(
                "{}",
                json!({
                    "suite": suite,
                    "checks": results.len(),
                    "passed": results.iter().filter(|c| c.pass).count(),
                    "ok": all_pass,
                })
            );
            if !all_pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Render { input } => {
            let v = parse_value(&input)?;
            if v.get("terms").is_some() {
                let f = js::morphism_from_json(&v).map_err(|e| e.to_string())?;
                emit_morphism(&f, &cli.format);
            } else {
                let d = js::diagram_from_json(&v).map_err(|e| e.to_string())?;
                println!("{}", render::diagram_render(&d, &cli.format));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_sigma_like(
    s: &Morphism,
    perm: &[usize],
    basis: &str,
    format: &str,
) -> Result<(), String> {
    if basis == "hat" {
        let expansion = semisimple::expand_hat(s);
        let terms: Vec<Value> = expansion
            .iter()
            .map(|(d, c)| {
                json!({
                    "coeff": c.constant_term().to_string(),
                    "diagram": js::diagram_to_json(d),
                })
            })
            .collect();
        println!(
            "{}",
            json!({ "hat_terms": terms, "permutation": perm })
        );
        return Ok(());
    }
    if format == "json" {
        println!(
            "{}",
            json!({
                "morphism": js::morphism_to_json(s),
                "permutation": perm,
            })
        );
    } else {
        println!("{}", render::morphism_render(s, format));
        println!("permutation: {perm:?}");
    }
    Ok(())
}

fn parse_word(w: &str) -> Result<Vec<(usize, usize)>, String> {
    w.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (p, q) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| format!("bad word entry {part:?}; use p:q"))?;
            let p = p.trim().parse().map_err(|_| format!("bad p in {part:?}"))?;
            let q = q.trim().parse().map_err(|_| format!("bad q in {part:?}"))?;
            Ok((p, q))
        })
        .collect()
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `tl ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
