//! One function per subcommand. Each returns the rendered output.

use std::path::Path;

use hypbill::geometry::{
    complexity_p_n, diagonal_census, realize, realize_within, realize_word_class, render_svg,
    ClassRealization, SvgOptions,
};
use hypbill::growth::{growth_series, series_coefficients, tiling_growth_rate};
use hypbill::langrate::{complexity_report, language_rate, ComplexityReport, LanguageRule};
use hypbill::paths::{is_minimal, shortest_path, tiling_distance, TilingPath, Witness};
use hypbill::tiling::{GraphDocument, TilingGraph};
use hypbill::words::{
    check_admissible_in, enumerate_admissible_classes, word_class, word_class_in, word_to_path,
    LetterOrder, RuleSet, Violation, Word, DEFAULT_CLASS_CAP,
};
use hypbill::{build_tiling, Error, Result, TilingParams};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{big, fixed, float, Format, Report};
use crate::{Command, PathAction, RuleArg, SaveGraph, Tiling, WordAction, WordArg};

/// Rows of the even-q table of growth rates.
pub const TABLE_1: [(u32, u32); 15] = [
    (3, 8),
    (4, 6),
    (4, 8),
    (5, 4),
    (5, 6),
    (5, 8),
    (6, 4),
    (6, 6),
    (6, 8),
    (7, 4),
    (7, 6),
    (7, 8),
    (8, 4),
    (8, 6),
    (8, 8),
];

/// Rows of the odd-q table of bounds.
pub const TABLE_3: [(u32, u32); 14] = [
    (3, 7),
    (3, 9),
    (4, 5),
    (4, 7),
    (4, 9),
    (5, 5),
    (5, 7),
    (5, 9),
    (6, 5),
    (6, 7),
    (6, 9),
    (7, 3),
    (7, 5),
    (7, 7),
];

pub fn run(command: Command) -> Result<String> {
    match command {
        Command::Growth {
            tiling,
            terms,
            output,
        } => growth(params(tiling)?, terms)?.render(output.resolve(Format::Text)),
        Command::Alpha { tiling, tol, output } => {
            let p = params(tiling)?;
            let rate = tiling_growth_rate(p, check_tol(tol)?)?;
            Report::new(json!({
                "p": p.p,
                "q": p.q,
                "alpha": float(rate.alpha),
                "precision": rate.precision,
            }))
            .render(output.resolve(Format::Text))
        }
        Command::Tables { which, tol, output } => {
            tables(which, check_tol(tol)?)?.render(output.resolve(Format::Csv))
        }
        Command::Word { action } => word(action),
        Command::Path { action } => path(action),
        Command::LangRate {
            tiling,
            rule,
            tol,
            output,
        } => {
            let p = params(tiling)?;
            let rate = language_rate(p, language_rule(rule), check_tol(tol)?)?;
            Report::new(json!({
                "p": p.p,
                "q": p.q,
                "rule": rule_name(rule),
                "rate": float(rate),
            }))
            .render(output.resolve(Format::Text))
        }
        Command::Draw {
            tiling,
            depth,
            svg,
            word,
            radius,
            size,
            no_labels,
            budget,
            seed,
            graph,
            output,
        } => {
            let opts = DrawOptions {
                radius,
                size,
                labels: !no_labels,
                budget,
                seed,
            };
            let p = params(tiling)?;
            let word = word.map(|s| Word::parse(&s, p)).transpose()?;
            let reach = word.as_ref().map_or(0, |w| w.len() as u32 + 1);
            let depth = depth.unwrap_or((radius + 1).max(reach + p.margin()));
            let g = build_tiling(p, depth)?;
            save_graph(&graph, &g)?;
            draw(g, &svg, word, reach, opts)?.render(output.resolve(Format::Text))
        }
        Command::Census {
            tiling,
            kmax,
            depth,
            p1,
            p2,
            graph,
            output,
        } => {
            let p = params(tiling)?;
            if kmax == 0 {
                return Err(Error::Parameter("--kmax must be at least 1".into()));
            }
            let depth = depth.unwrap_or(if p.p == 3 { 2 * kmax + 4 } else { kmax + 5 });
            let g = build_tiling(p, depth)?;
            save_graph(&graph, &g)?;
            census(g, kmax, p1.zip(p2))?.render(output.resolve(Format::Text))
        }
    }
}

fn params(t: Tiling) -> Result<TilingParams> {
    TilingParams::new(t.p, t.q)
}

fn check_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Error::Parameter(format!("--tol must be positive, got {tol}")))
    }
}

fn save_graph(opt: &SaveGraph, g: &TilingGraph) -> Result<()> {
    if let Some(path) = &opt.save_graph {
        write_file(path, &GraphDocument::from_graph(g)?.to_json()?)?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Resource(format!("cannot write {}: {e}", path.display())))
}

fn growth(p: TilingParams, terms: usize) -> Result<Report> {
    let s = growth_series(p);
    let coeffs = series_coefficients(&s, terms);
    let mut csv = String::from("n,tiles\n");
    for (n, c) in coeffs.iter().enumerate() {
        csv.push_str(&format!("{n},{c}\n"));
    }
    Ok(Report::new(json!({
        "p": p.p,
        "q": p.q,
        "numerator": list(&s.numerator),
        "denominator": list(&s.denominator),
        "coefficients": list(&coeffs),
    }))
    .with_csv(csv))
}

fn list<T: ToString>(v: &[T]) -> Vec<Value> {
    v.iter().map(big).collect()
}

fn tables(which: u32, tol: f64) -> Result<Report> {
    match which {
        1 => {
            let rows: Vec<(u32, u32, f64)> = TABLE_1
                .par_iter()
                .map(|&(p, q)| Ok((p, q, tiling_growth_rate(TilingParams::new(p, q)?, tol)?.alpha)))
                .collect::<Result<_>>()?;
            let mut csv = String::from("p,q,Billiard Language Complexity\n");
            for (p, q, a) in &rows {
                csv.push_str(&format!("{p},{q},{}\n", fixed(*a)));
            }
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|&(p, q, a)| json!({"p": p, "q": q, "alpha": float(a)}))
                .collect();
            Ok(Report::new(json!({"table": 1, "rows": json_rows})).with_csv(csv))
        }
        3 => {
            let rows: Vec<_> = TABLE_3
                .par_iter()
                .map(|&(p, q)| match complexity_report(TilingParams::new(p, q)?, tol)? {
                    ComplexityReport::Odd(b) => Ok(b),
                    ComplexityReport::Even { .. } => {
                        Err(Error::Inconsistent(format!("({p},{q}) reported as even")))
                    }
                })
                .collect::<Result<_>>()?;
            let mut csv = String::from("p,q,ell,alpha^((q-1)/(q+1)),alpha,u\n");
            let mut json_rows = Vec::new();
            for b in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    b.p,
                    b.q,
                    fixed(b.ell),
                    fixed(b.alpha_pow),
                    fixed(b.alpha),
                    fixed(b.u)
                ));
                json_rows.push(json!({
                    "p": b.p,
                    "q": b.q,
                    "ell": float(b.ell),
                    "lower_language_rate": float(b.lower_language_rate),
                    "alpha_pow": float(b.alpha_pow),
                    "alpha": float(b.alpha),
                    "u": float(b.u),
                }));
            }
            Ok(Report::new(json!({"table": 3, "rows": json_rows})).with_csv(csv))
        }
        other => Err(Error::Parameter(format!("--which must be 1 or 3, got {other}"))),
    }
}

/// Parses a word; 0-based input (as in some figures) is shifted to `1..=p`.
fn parse_word(arg: &str, zero_based: bool, p: TilingParams) -> Result<Word> {
    if !zero_based {
        return Word::parse(arg, p);
    }
    let tokens: Vec<&str> = if arg.contains([',', ' ']) {
        arg.split([',', ' ']).filter(|t| !t.is_empty()).collect()
    } else {
        arg.trim().split("").filter(|t| !t.is_empty()).collect()
    };
    let letters = tokens
        .iter()
        .map(|t| match t.parse::<u8>() {
            Ok(l) if u32::from(l) < p.p => Ok(l + 1),
            _ => Err(Error::Parameter(format!("bad 0-based letter {t:?} for p = {}", p.p))),
        })
        .collect::<Result<Vec<u8>>>()?;
    Word::new(letters, p)
}

fn word_arg(w: &WordArg, p: TilingParams) -> Result<(Word, LetterOrder)> {
    let order = match &w.order {
        Some(s) => LetterOrder::new(Word::parse(s, p)?.letters, p.p)?,
        None => LetterOrder::standard(p.p),
    };
    Ok((parse_word(&w.word, w.zero_based, p)?, order))
}

fn violation(v: &Option<Violation>) -> Value {
    match v {
        Some(v) => json!({"rule": v.rule.to_string(), "position": v.position, "length": v.length}),
        None => Value::Null,
    }
}

fn word(action: WordAction) -> Result<String> {
    match action {
        WordAction::Check {
            tiling,
            word,
            rules,
            output,
        } => {
            let p = params(tiling)?;
            let (w, order) = word_arg(&word, p)?;
            let rules = rules.unwrap_or(if p.q_even() { RuleArg::E } else { RuleArg::OUpper });
            let verdict = check_admissible_in(&w, rule_set(rules), &order)?;
            Report::new(json!({
                "p": p.p,
                "q": p.q,
                "word": w.to_string(),
                "rules": rule_name(rules),
                "admissible": verdict.admissible,
                "violation": violation(&verdict.violation),
            }))
            .render(output.resolve(Format::Text))
        }
        WordAction::Class {
            tiling,
            word,
            cap,
            show,
            output,
        } => {
            let p = params(tiling)?;
            let (w, order) = word_arg(&word, p)?;
            let class = word_class_in(&w, cap, &order)?;
            let witness = class.witness.as_ref().map_or(Value::Null, |(m, v)| {
                json!({"member": m.to_string(), "violation": violation(&Some(*v))})
            });
            Report::new(json!({
                "p": p.p,
                "q": p.q,
                "word": w.to_string(),
                "canonical": class.canonical.to_string(),
                "size": class.members.len(),
                "admissible": class.class_admissible,
                "witness": witness,
                "members": class.members.iter().take(show).map(Word::to_string).collect::<Vec<_>>(),
            }))
            .render(output.resolve(Format::Text))
        }
        WordAction::Classes {
            tiling,
            length,
            budget,
            show,
            output,
        } => {
            let p = params(tiling)?;
            let e = enumerate_admissible_classes(p, length, budget)?;
            Report::new(json!({
                "p": p.p,
                "q": p.q,
                "length": e.length,
                "count": e.count,
                "representatives": e.representatives.iter().take(show).map(Word::to_string).collect::<Vec<_>>(),
            }))
            .render(output.resolve(Format::Text))
        }
    }
}

fn path(action: PathAction) -> Result<String> {
    match action {
        PathAction::Dist {
            tiling,
            from,
            to,
            depth,
            graph,
            output,
        } => {
            let g = build_tiling(params(tiling)?, depth)?;
            save_graph(&graph, &g)?;
            for t in [from, to] {
                if t as usize >= g.tiles.len() {
                    return Err(Error::Parameter(format!(
                        "tile {t} does not exist at depth {depth} ({} tiles)",
                        g.tiles.len()
                    )));
                }
            }
            let d = tiling_distance(&g, from, to)?;
            let sp = shortest_path(&g, from, to)?;
            Report::new(json!({
                "p": g.p(),
                "q": g.q(),
                "from": from,
                "to": to,
                "distance": d,
                "path": sp.tiles,
            }))
            .render(output.resolve(Format::Text))
        }
        PathAction::Minimal {
            tiling,
            word,
            zero_based,
            tiles,
            depth,
            graph,
            output,
        } => {
            let p = params(tiling)?;
            let w = word.as_deref().map(|s| parse_word(s, zero_based, p)).transpose()?;
            let (g, path) = match (&w, tiles) {
                (Some(w), _) => word_path(p, w, depth)?,
                (None, Some(tiles)) => {
                    let depth = depth.unwrap_or(tiles.len() as u32 + p.margin() + 1);
                    let g = build_tiling(p, depth)?;
                    if let Some(t) = tiles.iter().find(|&&t| t as usize >= g.tiles.len()) {
                        return Err(Error::Parameter(format!("tile {t} does not exist at depth {depth}")));
                    }
                    let path = TilingPath::from_tiles(&g, tiles)?;
                    (g, path)
                }
                (None, None) => return Err(Error::Parameter("give --word or --tiles".into())),
            };
            save_graph(&graph, &g)?;
            let m = is_minimal(&g, &path)?;
            let witness = match m.witness {
                Some(Witness::DoubledClass {
                    class,
                    first,
                    second,
                }) => json!({"kind": "doubled-class", "class": class, "first": first, "second": second}),
                Some(Witness::Shortcut { distance }) => json!({"kind": "shortcut", "distance": distance}),
                None => Value::Null,
            };
            Report::new(json!({
                "p": p.p,
                "q": p.q,
                "tiles": path.tiles,
                "minimal": m.minimal,
                "length": m.length,
                "distance": m.distance,
                "witness": witness,
            }))
            .render(output.resolve(Format::Text))
        }
    }
}

/// Follows `w` from the base tile. Without an explicit depth the tiling is
/// grown until every tile of the path lies within the trusted radius.
fn word_path(p: TilingParams, w: &Word, depth: Option<u32>) -> Result<(TilingGraph, TilingPath)> {
    if let Some(depth) = depth {
        let g = build_tiling(p, depth)?;
        let path = word_to_path(w, &g, g.base_tile, Default::default())?;
        return Ok((g, path));
    }
    let cap = w.len() as u32 + p.margin() + 1;
    let mut depth = p.margin() + 1;
    loop {
        let g = build_tiling(p, depth)?;
        let reach = word_to_path(w, &g, g.base_tile, Default::default()).map(|path| {
            let far = path.tiles.iter().filter_map(|&t| g.tile_distance[t as usize]).max();
            (path, far)
        });
        match reach {
            Ok((path, Some(far))) if far <= g.trusted_radius() => return Ok((g, path)),
            Ok(_) | Err(Error::OutOfDepth { .. }) if depth < cap => depth += 1,
            Ok((path, _)) => return Ok((g, path)),
            Err(e) => return Err(e),
        }
    }
}

fn rule_set(r: RuleArg) -> RuleSet {
    match r {
        RuleArg::E => RuleSet::E,
        RuleArg::OUpper => RuleSet::OUpper,
        RuleArg::OLower => RuleSet::OLower,
    }
}

fn language_rule(r: RuleArg) -> LanguageRule {
    match r {
        RuleArg::E => LanguageRule::E,
        RuleArg::OUpper => LanguageRule::OUpper,
        RuleArg::OLower => LanguageRule::OLower,
    }
}

fn rule_name(r: RuleArg) -> &'static str {
    match r {
        RuleArg::E => "e",
        RuleArg::OUpper => "o-upper",
        RuleArg::OLower => "o-lower",
    }
}

#[derive(Clone, Copy)]
struct DrawOptions {
    radius: u32,
    size: u32,
    labels: bool,
    budget: u32,
    seed: u64,
}

fn draw(g: TilingGraph, svg: &Path, word: Option<Word>, reach: u32, o: DrawOptions) -> Result<Report> {
    let p = g.params;
    if g.depth == 0 {
        return Err(Error::Parameter("--depth must be at least 1 to draw".into()));
    }
    let r = realize_within(&g, o.radius.max(reach + 1).min(g.depth - 1))?;
    let opts = SvgOptions {
        size: o.size,
        radius: o.radius.min(r.realized_radius()),
        labels: o.labels,
    };
    let mut info = json!({
        "p": p.p,
        "q": p.q,
        "svg": svg.display().to_string(),
        "radius": opts.radius,
        "tiles": r.realized_tiles().filter(|&t| matches!(g.tile_distance[t as usize], Some(d) if d <= opts.radius)).count(),
    });
    let picture = match word {
        None => render_svg(&r, &opts, None)?,
        Some(w) => {
            let class = word_class(&w, DEFAULT_CLASS_CAP)?;
            match realize_word_class(&r, &class, o.budget, o.seed)? {
                ClassRealization::Witness { segment, trace } => {
                    info["trace"] = json!({
                        "status": "witness",
                        "word": trace.word.as_ref().map(Word::to_string),
                        "tiles": trace.path.tiles,
                        "cl": trace.cl,
                        "tl": trace.tl,
                    });
                    render_svg(&r, &opts, Some((&segment, &trace)))?
                }
                ClassRealization::Refuted { witness } => {
                    info["trace"] = json!({
                        "status": "refuted",
                        "member": witness.as_ref().map(|(m, _)| m.to_string()),
                        "violation": violation(&witness.map(|(_, v)| v)),
                    });
                    render_svg(&r, &opts, None)?
                }
                ClassRealization::NotFound { attempts } => {
                    info["trace"] = json!({"status": "not-found", "attempts": attempts});
                    render_svg(&r, &opts, None)?
                }
            }
        }
    };
    write_file(svg, &picture)?;
    Ok(Report::new(info))
}

fn census(g: TilingGraph, kmax: u32, p12: Option<(i64, i64)>) -> Result<Report> {
    let r = realize(&g)?;
    let v = g.tiles[g.base_tile as usize].vertices[0]
        .ok_or_else(|| Error::Inconsistent("base tile has an open corner".into()))?;
    let c = diagonal_census(&r, v, kmax)?;
    let mut value = json!({
        "p": c.p,
        "q": c.q,
        "depth": g.depth,
        "vertex": c.vertex,
        "kmax": c.kmax,
        "n_cl": c.n_cl,
        "n_prim": c.n_prim,
        "self_reverse": c.self_reverse,
        "gd": c.gd,
        "edge_neighbors": c.edge_neighbors,
        "excluded": c.excluded,
    });
    if let Some((p1, p2)) = p12 {
        let pn: Vec<Value> = (1..=kmax)
            .map(|n| complexity_p_n(&c, i128::from(p1), i128::from(p2), n).map(|x| big(&x)))
            .collect::<Result<_>>()?;
        value["complexity"] = Value::Array(pn);
    }
    Ok(Report::new(value))
}
