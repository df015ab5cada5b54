//! Command-line front end for `g2rigid`.
//!
//! Exit codes: 0 on success, 2 for malformed input, 3 when a mathematical
//! precondition of the requested operation fails.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use g2rigid::convolution::{katz_reduce, mc, mt};
use g2rigid::g2::{
    classify_rigid_g2, construct_h, enumerate_rational_pairs, infinity_case, recognize,
    ClassificationReport, InfinityCase,
};
use g2rigid::motivic::{hyp_equation, specialize_and_render};
use g2rigid::pointcount::{check_fiber, count_fiber, Method};
use g2rigid::{Character, Error, FormalLocalSystem, Point, RankOneSystem};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "g2rigid",
    version,
    about = "Rigid local systems with G2 monodromy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build H0..H6 for a pair (phi, eta).
    Construct {
        #[arg(long)]
        phi: Character,
        #[arg(long)]
        eta: Character,
        /// Print the table of local monodromies (the default output).
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
        /// Check rigidity, Euler characteristic, determinants and G2 classes.
        #[arg(long)]
        verify: bool,
    },
    /// Middle convolution with a nontrivial character; prints JSON.
    Mc {
        /// JSON local system; standard input when omitted or "-".
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        chi: Character,
    },
    /// Middle tensor product with a rank-one system; prints JSON.
    Mt {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Rank-one character at a finite point, as LABEL=p/q; repeatable.
        #[arg(long = "char", value_parser = parse_labeled, required = true)]
        chars: Vec<(String, Character)>,
    },
    /// Greedy reduction to rank one by twists and convolutions.
    Reduce {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Rank, centralizer dimensions, rigidity index and Euler characteristic.
    Rigidity {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Classification of rigid G2 triples over characters of order dividing the bound.
    Classify {
        #[arg(long, default_value_t = 24)]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exponents of the Kummer hypersurface Hyp(n1, n2), optionally specialized.
    Hyp {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        n1: i64,
        #[arg(long, allow_hyphen_values = true)]
        n2: i64,
        /// Values of T1 and T2, as t1,t2.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        specialize: Option<(i64, i64)>,
        #[arg(long)]
        json: bool,
    },
    /// Point counts on the fibers X7 = t over F_q.
    Count {
        #[arg(long)]
        q: u64,
        /// Fiber; every t outside {0, 1} when omitted.
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Pairs whose infinity monodromy has rational trace.
    Rational {
        #[arg(long, default_value_t = 14)]
        max_order: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    CharSum,
    Direct,
    Both,
}

fn parse_labeled(s: &str) -> Result<(String, Character), String> {
    let (label, chi) = s
        .split_once('=')
        .ok_or_else(|| format!("expected LABEL=p/q, got {s:?}"))?;
    Ok((
        label.to_string(),
        chi.parse().map_err(|e: Error| e.to_string())?,
    ))
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("expected t1,t2, got {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn read_system(input: &Option<PathBuf>) -> Result<FormalLocalSystem> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            s
        }
    };
    serde_json::from_str(&text).context("parsing local system JSON")
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn points(f: &FormalLocalSystem) -> Vec<Point> {
    let mut v: Vec<Point> = f.labels().map(|l| Point::Finite(l.to_string())).collect();
    v.push(Point::Infinity);
    v
}

fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut width = header.iter().map(String::len).collect::<Vec<_>>();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join(" | ").trim_end().to_string()
    };
    let mut out = vec![line(header)];
    out.push(
        width
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .join("-+-"),
    );
    out.extend(rows.iter().map(|r| line(r)));
    out.join("\n")
}

fn construct(phi: Character, eta: Character, json: bool, verify: bool) -> Result<()> {
    let hs = construct_h(phi, eta)?;
    let case: Option<InfinityCase> = infinity_case(phi, eta).ok();
    if json {
        return print_json(
            &json!({ "phi": phi, "eta": eta, "infinity_case": case, "systems": hs }),
        );
    }
    let header: Vec<String> = ["", "alpha1", "alpha2", "infinity"]
        .map(String::from)
        .into();
    let rows: Vec<Vec<String>> = hs
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut row = vec![format!("H{i}")];
            row.extend(points(h).iter().map(|p| {
                h.monodromy_at(p)
                    .map(ToString::to_string)
                    .unwrap_or_default()
            }));
            row
        })
        .collect();
    println!("{}", render_table(&header, &rows));
    if verify {
        let mut ok = true;
        for (i, h) in hs.iter().enumerate() {
            let (rig, chi) = (h.rigidity_index(), h.euler_characteristic());
            let good = rig == 2 && chi <= 0 && h.rank() == i as u32 + 1;
            ok &= good;
            println!(
                "H{i}: rank {}, rigidity index {rig}, Euler characteristic {chi}: {}",
                h.rank(),
                verdict(good)
            );
        }
        let h6 = &hs[6];
        for p in points(h6) {
            let m = h6.monodromy_at(&p)?;
            match recognize(m) {
                Ok(info) => println!(
                    "H6 at {p}: G2 class {} (row {})",
                    info.name, info.template_id
                ),
                Err(e) => {
                    ok = false;
                    println!("H6 at {p}: {e}");
                }
            }
        }
        println!("determinant condition: ok (checked on construction)");
        if !ok {
            anyhow::bail!(Error::NoRigidSystem("verification failed"));
        }
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn rigidity(f: &FormalLocalSystem, json: bool) -> Result<()> {
    let pts = points(f);
    let dims = f.centralizer_dims();
    let classes: Vec<Option<String>> = pts
        .iter()
        .map(|p| {
            f.monodromy_at(p)
                .ok()
                .and_then(|m| recognize(m).ok())
                .map(|i| i.name)
        })
        .collect();
    if json {
        let per_point: Vec<_> = pts
            .iter()
            .zip(&dims)
            .zip(&classes)
            .map(|((p, d), c)| json!({ "point": p.to_string(), "centralizer_dim": d, "g2_class": c }))
            .collect();
        return print_json(&json!({
            "rank": f.rank(),
            "points": per_point,
            "rigidity_index": f.rigidity_index(),
            "euler_characteristic": f.euler_characteristic(),
        }));
    }
    println!("rank {}", f.rank());
    for ((p, d), c) in pts.iter().zip(&dims).zip(&classes) {
        let class = c
            .as_ref()
            .map(|n| format!(", G2 class {n}"))
            .unwrap_or_default();
        println!(
            "{p}: [{}], centralizer dimension {d}{class}",
            f.monodromy_at(p)?
        );
    }
    println!("rigidity index {}", f.rigidity_index());
    println!("Euler characteristic {}", f.euler_characteristic());
    Ok(())
}

fn print_classification(r: &ClassificationReport) {
    println!("characters of order dividing {}", r.bound);
    for (i, p) in r.profiles.iter().enumerate() {
        let rules: Vec<&str> = p.excluding_rules.iter().map(|r| r.name()).collect();
        let [a, b, c] = p.profile;
        println!(
            "P{} ({a}, {b}, {c}): {} triple(s), {}{}",
            i + 1,
            p.classes.len(),
            p.status,
            if rules.is_empty() {
                String::new()
            } else {
                format!(" [{}]", rules.join(", "))
            }
        );
    }
    println!("{} survivor(s)", r.survivors.len());
    for s in &r.survivors {
        println!(
            "  phi = {}, eta = {}: {} | {} | {} ({})",
            s.phi, s.eta, s.alpha1, s.alpha2, s.infinity, s.infinity_class.name
        );
    }
}

fn count(q: u64, t: Option<u64>, method: MethodArg, threads: usize, json: bool) -> Result<()> {
    let ts: Vec<u64> = match t {
        Some(t) => vec![t],
        None => (2..q).collect(),
    };
    let mut values = Vec::new();
    for t in ts {
        let v = match method {
            MethodArg::Both => {
                let c = check_fiber(q, t, threads)?;
                if !json {
                    println!(
                        "q = {q}, t = {t}: domain {}, S = {}, #Hyp = {} (char-sum) / {} (direct): {}",
                        c.char_sum.domain_size,
                        c.char_sum.s_value,
                        c.char_sum.hyp_count,
                        c.direct.hyp_count,
                        if c.agree { "agree" } else { "DISAGREE" }
                    );
                }
                serde_json::to_value(c)?
            }
            MethodArg::CharSum | MethodArg::Direct => {
                let m = if matches!(method, MethodArg::CharSum) {
                    Method::CharSum
                } else {
                    Method::Direct
                };
                let r = count_fiber(q, t, m, threads)?;
                if !json {
                    println!(
                        "q = {q}, t = {t}: domain {}, S = {}, #Hyp = {} ({:.3} s, {} thread(s))",
                        r.domain_size, r.s_value, r.hyp_count, r.wall_time, r.threads
                    );
                }
                serde_json::to_value(r)?
            }
        };
        values.push(v);
    }
    if json {
        if t.is_some() {
            print_json(&values[0])?;
        } else {
            print_json(&values)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct {
            phi,
            eta,
            table: _,
            json,
            verify,
        } => construct(phi, eta, json, verify),
        Command::Mc { input, chi } => print_json(&mc(&read_system(&input)?, chi)?),
        Command::Mt { input, chars } => {
            print_json(&mt(&read_system(&input)?, &RankOneSystem::new(chars))?)
        }
        Command::Reduce { input, json } => {
            let r = katz_reduce(&read_system(&input)?);
            if json {
                return print_json(&r);
            }
            for (i, s) in r.trace.iter().enumerate() {
                let tw: Vec<String> = s
                    .twist
                    .iter()
                    .map(|t| format!("{}={}", t.label, t.character))
                    .collect();
                println!(
                    "step {}: twist {}, mc {}, rank {}",
                    i + 1,
                    tw.join(" "),
                    s.chi,
                    s.rank_after
                );
            }
            println!("outcome: {}", serde_json::to_string(&r.outcome)?);
            println!("last: {:?}", r.last);
            Ok(())
        }
        Command::Rigidity { input, json } => rigidity(&read_system(&input)?, json),
        Command::Classify { bound, json } => {
            let r = classify_rigid_g2(bound);
            if json {
                print_json(&r)
            } else {
                print_classification(&r);
                Ok(())
            }
        }
        Command::Hyp {
            n,
            n1,
            n2,
            specialize,
            json,
        } => {
            let h = hyp_equation(n, n1, n2)?;
            match specialize {
                None if json => print_json(&h),
                None => {
                    println!("N = {}, n1 = {}, n2 = {}", h.n, h.n1, h.n2);
                    for (i, e) in h.e.iter().enumerate() {
                        println!("X{}: T1 exponent {}, T2 exponent {}", i + 1, e[0], e[1]);
                    }
                    for (i, f) in h.f.iter().enumerate() {
                        println!("X{}-X{}: exponent {}", i + 2, i + 1, f);
                    }
                    Ok(())
                }
                Some((t1, t2)) => {
                    let s = specialize_and_render(&h, t1, t2)?;
                    if json {
                        return print_json(&s);
                    }
                    println!("{}", s.equation());
                    for c in s.constraints() {
                        println!("  {c}");
                    }
                    Ok(())
                }
            }
        }
        Command::Count {
            q,
            t,
            method,
            threads,
            json,
        } => count(q, t, method, threads, json),
        Command::Rational { max_order, json } => {
            let pairs = enumerate_rational_pairs(max_order);
            if json {
                return print_json(&pairs);
            }
            for p in &pairs {
                let note = if p.conditions_hold {
                    ""
                } else {
                    " (violates the construction conditions)"
                };
                println!(
                    "case {}: phi = {}, eta = {}: {}{note}",
                    p.case, p.phi, p.eta, p.infinity
                );
            }
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if !e.is_validation() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
