use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use serde_json::{json, Value};
use splitpoly::arrangement::{combinatorics, lattice_isomorphisms, tangent_dimension, Arrangement};
use splitpoly::fixtures;
use splitpoly::io;
use splitpoly::numberfield::{solve_quadratic, QuadraticSolution};
use splitpoly::pipeline::{
    convention_census, dedupe_pairs, render_certificate, render_line, run_algorithm_nonarithmetic,
    run_algorithm_rational, verify_certificate, DeltaRecord, PairCertificate, PipelineConfig, PipelineRun,
};
use splitpoly::splitting::{
    count_plinths, delta_polynomial, enumerate_plinths, find_nonsplitting_polygon, find_splitting_polygons,
    validate_plinth, ConventionOptions, Plinth, Polygon, SplittingOutcome, DEFAULT_NONSPLITTING_CAP,
};

use crate::args::{Cli, Command, Format, PlinthArgs, SearchArgs};
use crate::output;

/// Printed in place of the field generator.
const SYMBOL: &str = "w";

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let out = cli.output.as_deref();
    let fmt = cli.format;
    match &cli.command {
        Command::Plinths {
            arrangement,
            conv,
            list,
            census,
        } => {
            let a = load(arrangement)?;
            if *census {
                plinth_census(&a, conv.length, fmt, out)
            } else {
                plinths(&a, conv.length, &conv.options(), *list, fmt, out)
            }
        }
        Command::Delta { arrangement, plinth } => {
            let a = load(arrangement)?;
            let psi = load_plinth(&a, plinth)?;
            delta(&a, &psi, fmt, out)
        }
        Command::Polygons { arrangement, plinth } => {
            let a = load(arrangement)?;
            let psi = load_plinth(&a, plinth)?;
            polygons(&a, &psi, fmt, out)
        }
        Command::Rigidity { arrangement } => {
            let a = load(arrangement)?;
            let dim = tangent_dimension(&a)?;
            let text = match fmt {
                Format::Json => io::value_to_text(&json!({ "lines": a.len(), "tangent_dimension": dim })),
                Format::Text => format!(
                    "tangent dimension {dim} on {} lines ({})\n",
                    a.len(),
                    if dim == 0 { "rigid" } else { "not rigid" }
                ),
            };
            output::emit(out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { first, second } => iso(&load(first)?, &load(second)?, fmt, out),
        Command::Algo1 {
            arrangement,
            search,
            branch,
        } => {
            let a = load(arrangement)?;
            let mut cfg = search_config(search);
            cfg.branch = *branch as usize;
            let t = Instant::now();
            let run = run_algorithm_nonarithmetic(&a, &cfg)?;
            emit_run(run, search, t, fmt, out)
        }
        Command::Algo2 { arrangement, search } => {
            let a = load(arrangement)?;
            let cfg = search_config(search);
            let t = Instant::now();
            let run = run_algorithm_rational(&a, &cfg)?;
            emit_run(run, search, t, fmt, out)
        }
        Command::Verify { certificates } => {
            let certs = io::certificates_from_json(&output::read(certificates)?)
                .with_context(|| format!("parsing {}", certificates.display()))?;
            verify(&certs, fmt, out)
        }
        Command::VerifyPaper { full } => verify_paper(*full, fmt, out),
    }
}

fn load(path: &Path) -> Result<Arrangement> {
    io::arrangement_from_json(&output::read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_plinth(a: &Arrangement, args: &PlinthArgs) -> Result<Plinth> {
    let psi = match &args.plinth {
        Some(path) => {
            io::plinth_from_json(&output::read(path)?).with_context(|| format!("parsing {}", path.display()))?
        }
        None => {
            ensure!(!args.support.is_empty(), "give --plinth FILE or --support with --pivots");
            plinth_from_labels(a, &args.support, &args.pivots)?
        }
    };
    let v = validate_plinth(&combinatorics(a), &psi);
    ensure!(v.ok(), "invalid plinth: {}", v.diagnostics.join("; "));
    Ok(psi)
}

/// Resolves 1-based support lines and `i.j` pivot pairs.
fn plinth_from_labels(a: &Arrangement, support: &[usize], pivots: &[String]) -> Result<Plinth> {
    let index = |k: usize| -> Result<usize> {
        ensure!((1..=a.len()).contains(&k), "line {k} is out of range 1..={}", a.len());
        Ok(k - 1)
    };
    let support = support.iter().map(|&k| index(k)).collect::<Result<Vec<_>>>()?;
    let c = combinatorics(a);
    let mut points = Vec::with_capacity(pivots.len());
    for p in pivots {
        let (i, j) = p.split_once('.').with_context(|| format!("pivot {p:?} is not of the form i.j"))?;
        let i = index(i.trim().parse().with_context(|| format!("pivot {p:?}"))?)?;
        let j = index(j.trim().parse().with_context(|| format!("pivot {p:?}"))?)?;
        ensure!(i != j, "pivot {p:?} names one line twice");
        let point = c
            .points()
            .iter()
            .find(|pt| pt.contains(&i) && pt.contains(&j))
            .expect("two distinct lines meet");
        points.push(point.clone());
    }
    Ok(Plinth::new(support, points))
}

fn labels(a: &Arrangement, idx: &[usize]) -> String {
    idx.iter().map(|&i| a.label(i)).collect::<Vec<_>>().join(".")
}

fn plinth_text(a: &Arrangement, psi: &Plinth) -> String {
    let piv: Vec<String> = psi.pivots.iter().map(|p| labels(a, p)).collect();
    format!("support {} pivots {}", labels(a, &psi.support).replace('.', ","), piv.join(","))
}

fn plinths(
    a: &Arrangement,
    length: usize,
    conv: &ConventionOptions,
    list: bool,
    fmt: Format,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let c = combinatorics(a);
    let text = if list {
        let all = enumerate_plinths(&c, length, conv)?;
        match fmt {
            Format::Json => io::value_to_text(&json!({
                "convention": conv,
                "count": all.len(),
                "plinths": all,
            })),
            Format::Text => {
                let mut s = format!("{} plinths ({})\n", all.len(), conv.describe());
                for p in &all {
                    let _ = writeln!(s, "{}", plinth_text(a, p));
                }
                s
            }
        }
    } else {
        let n = count_plinths(&c, length, conv)?;
        match fmt {
            Format::Json => io::value_to_text(&json!({ "convention": conv, "count": n })),
            Format::Text => format!("{n} plinths ({})\n", conv.describe()),
        }
    };
    output::emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn plinth_census(a: &Arrangement, length: usize, fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let rows = convention_census(a, length, &ConventionOptions::all())?;
    let text = match fmt {
        Format::Json => io::value_to_text(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "convention": r.convention,
                        "plinths": r.plinths,
                        "hits": r.hits,
                        "raw": r.raw,
                        "lattice": r.lattice,
                        "projective": r.projective,
                    })
                })
                .collect(),
        )),
        Format::Text => {
            let mut s = format!(
                "{:<46} {:>9} {:>6} {:>6} {:>8} {:>10}\n",
                "convention", "plinths", "hits", "raw", "lattice", "projective"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<46} {:>9} {:>6} {:>6} {:>8} {:>10}",
                    r.convention.describe(),
                    r.plinths,
                    r.hits,
                    r.raw,
                    r.lattice,
                    r.projective
                );
            }
            s
        }
    };
    output::emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn factor_summary(d: &DeltaRecord) -> Result<(String, Value)> {
    let field = d.poly.field();
    Ok(match solve_quadratic(&d.poly)? {
        QuadraticSolution::Irreducible { discriminant } => {
            let class = discriminant.as_rational().and_then(|q| q.squarefree_class());
            let text = match &class {
                Some(k) => format!("irreducible, discriminant class {k}"),
                None => format!("irreducible over {field}, discriminant {}", discriminant.render(SYMBOL)),
            };
            let v = json!({
                "kind": "irreducible",
                "discriminant": io::element_value(&discriminant),
                "discriminant_class": class.map(|k| k.to_string()),
            });
            (text, v)
        }
        QuadraticSolution::Roots(r1, r2) => {
            let kind = if r1 == r2 { "double root" } else { "split" };
            (
                format!("{kind}, roots {}, {}", r1.render(SYMBOL), r2.render(SYMBOL)),
                json!({ "kind": kind, "roots": [io::element_value(&r1), io::element_value(&r2)] }),
            )
        }
        QuadraticSolution::LinearOrConstant(root) => (
            "degree below 2".to_string(),
            json!({ "kind": "low degree", "root": root.as_ref().map(io::element_value) }),
        ),
    })
}

fn delta(a: &Arrangement, psi: &Plinth, fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let d = delta_polynomial(a, psi)?;
    let rec = DeltaRecord::from(&d);
    let (summary, factor) = factor_summary(&rec)?;
    let degree = d.degree();
    let text = match fmt {
        Format::Json => io::value_to_text(&json!({
            "plinth": psi,
            "degree": degree,
            "delta": io::delta_value(&rec),
            "factorization": factor,
        })),
        Format::Text => {
            let mut s = format!("{}\n", plinth_text(a, psi));
            let _ = writeln!(s, "delta   {}", d.poly.render("t", SYMBOL));
            let _ = writeln!(s, "degree  {}", degree.map_or("-".into(), |k| k.to_string()));
            let _ = writeln!(s, "factors {summary}");
            if !d.excluded.is_empty() {
                let ex: Vec<String> = d.excluded.iter().map(|x| x.render(SYMBOL)).collect();
                let _ = writeln!(s, "excluded t = {}", ex.join(", "));
            }
            s
        }
    };
    output::emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn polygon_text(s: &mut String, title: &str, p: &Polygon) {
    let _ = writeln!(s, "{title} at t = {} ({})", p.lambda.render(SYMBOL), p.verdict.name());
    for (i, l) in p.lines.iter().enumerate() {
        let _ = writeln!(s, "  E{}: {}", i + 1, render_line(l, SYMBOL));
    }
}

fn polygons(a: &Arrangement, psi: &Plinth, fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let outcome = find_splitting_polygons(a, psi);
    let (pair, delta, verdict) = match outcome {
        SplittingOutcome::Pairs { delta, first, second } => (Some([first, second]), Some(delta), "pair".to_string()),
        SplittingOutcome::Irreducible(delta) => (None, Some(delta), "irreducible".to_string()),
        SplittingOutcome::None { delta, reason } => (None, delta, reason),
    };
    let witness = match (&pair, &delta) {
        (Some(_), Some(d)) => find_nonsplitting_polygon(a, psi, d, DEFAULT_NONSPLITTING_CAP).ok(),
        _ => None,
    };
    let text = match fmt {
        Format::Json => io::value_to_text(&json!({
            "plinth": psi,
            "outcome": verdict,
            "delta": delta.as_ref().map(|d| io::delta_value(&DeltaRecord::from(d))),
            "splitting": pair.as_ref().map(|p| p.iter().map(io::polygon_value).collect::<Vec<_>>()),
            "nonsplitting_witness": witness.as_ref().map(io::polygon_value),
        })),
        Format::Text => {
            let mut s = format!("{}\n", plinth_text(a, psi));
            if let Some(d) = &delta {
                let _ = writeln!(s, "delta {}", d.poly.render("t", SYMBOL));
            }
            match &pair {
                Some([p1, p2]) => {
                    polygon_text(&mut s, "splitting polygon 1", p1);
                    polygon_text(&mut s, "splitting polygon 2", p2);
                }
                None => {
                    let _ = writeln!(s, "no splitting pair: {verdict}");
                }
            }
            if let Some(w) = &witness {
                polygon_text(&mut s, "nonsplitting polygon", w);
            }
            s
        }
    };
    output::emit(out, &text)?;
    Ok(if pair.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn iso(a1: &Arrangement, a2: &Arrangement, fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let found = lattice_isomorphisms(&combinatorics(a1), &combinatorics(a2), true).into_iter().next();
    let text = match fmt {
        Format::Json => io::value_to_text(&json!({ "isomorphic": found.is_some(), "map": found })),
        Format::Text => match &found {
            Some(m) => {
                let pairs: Vec<String> = m.iter().enumerate().map(|(i, &j)| format!("{} -> {}", a1.label(i), a2.label(j))).collect();
                format!("isomorphic: {}\n", pairs.join(", "))
            }
            None => "not lattice isomorphic\n".to_string(),
        },
    };
    output::emit(out, &text)?;
    Ok(if found.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn search_config(s: &SearchArgs) -> PipelineConfig {
    let mut cfg = PipelineConfig::new(s.conv.length);
    cfg.convention = s.conv.options();
    cfg.max_extra_lines = s.max_extra_lines;
    cfg.arithmetic_mode = s.arithmetic();
    cfg
}

fn render_all(certs: &[PairCertificate], fmt: Format) -> String {
    match fmt {
        Format::Json => io::certificates_to_json(certs),
        Format::Text => certs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("[{}] {}", i + 1, render_certificate(c, SYMBOL)))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn emit_run(run: PipelineRun, s: &SearchArgs, t: Instant, fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let kept = dedupe_pairs(&run.certificates, s.dedupe_key());
    let log = &run.log;
    eprintln!(
        "{} certificates ({} before {:?} dedupe), {} nodes searched, {} hits, {:.1?}",
        kept.len(),
        run.certificates.len(),
        s.dedupe,
        log.nodes,
        log.hits,
        t.elapsed()
    );
    output::emit(out, &render_all(&kept, fmt))?;
    Ok(if kept.is_empty() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn verify(certs: &[PairCertificate], fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let transcripts: Vec<_> = certs.iter().map(verify_certificate).collect();
    let all_ok = transcripts.iter().all(|t| t.passed());
    let text = match fmt {
        Format::Json => io::value_to_text(&Value::Array(
            transcripts
                .iter()
                .map(|t| {
                    json!({
                        "passed": t.passed(),
                        "checks": t.checks.len(),
                        "first_failure": t.first_failure().map(|(name, why)| format!("{name}: {why}")),
                    })
                })
                .collect(),
        )),
        Format::Text => {
            let mut s = String::new();
            for (i, t) in transcripts.iter().enumerate() {
                let _ = writeln!(s, "certificate {}: {}", i + 1, if t.passed() { "ok" } else { "FAILED" });
                if !t.passed() {
                    s.push_str(&t.render());
                }
            }
            s
        }
    };
    output::emit(out, &text)?;
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

struct Example {
    name: &'static str,
    base: Arrangement,
    cfg: PipelineConfig,
    rational: bool,
    want: [Arrangement; 2],
}

fn examples(full: bool) -> Vec<Example> {
    let (ml, mut ml_cfg) = fixtures::maclane_search();
    if full {
        ml_cfg = PipelineConfig::new(3);
    }
    let (fs, fs_cfg) = fixtures::falk_sturmfels_search();
    let (rat, rat_cfg) = fixtures::rational_search();
    vec![
        Example {
            name: "MacLane",
            base: ml,
            cfg: ml_cfg,
            rational: false,
            want: fixtures::maclane_pair(),
        },
        Example {
            name: "Falk-Sturmfels",
            base: fs,
            cfg: fs_cfg,
            rational: false,
            want: fixtures::falk_sturmfels_pair(),
        },
        Example {
            name: "rational",
            base: rat,
            cfg: rat_cfg,
            rational: true,
            want: fixtures::rational_pair(),
        },
    ]
}

fn verify_paper(full: bool, fmt: Format, out: Option<&Path>) -> Result<ExitCode> {
    let mut found = Vec::new();
    let mut ok = true;
    for ex in examples(full) {
        let t = Instant::now();
        let run = if ex.rational {
            run_algorithm_rational(&ex.base, &ex.cfg)?
        } else {
            run_algorithm_nonarithmetic(&ex.base, &ex.cfg)?
        };
        let hit = run
            .certificates
            .into_iter()
            .find_map(|c| fixtures::pair_match(&c, &ex.want).map(|m| (c, m)));
        let Some((c, how)) = hit else {
            eprintln!("{}: published pair not found", ex.name);
            ok = false;
            continue;
        };
        let transcript = verify_certificate(&c);
        eprintln!(
            "{}: {} pair found ({:?} match), verification {}, {:.1?}",
            ex.name,
            c.classification.name(),
            how,
            if transcript.passed() { "passed" } else { "FAILED" },
            t.elapsed()
        );
        if !transcript.passed() {
            eprint!("{}", transcript.render());
            ok = false;
        }
        found.push(c);
    }
    if found.is_empty() {
        bail!("no example produced its published pair");
    }
    output::emit(out, &render_all(&found, fmt))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
