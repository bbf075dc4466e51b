use coxgit::exact_algebra::Polynomial;
use coxgit::grading_lattice::Character;
use coxgit::hilb_cox::{cox_hilb_table, hilb_series, verify_ginzburg};
use coxgit::reductive_semiinv::{adhm_weight_space, sl_weight_space, ADHMPreset};
use coxgit::saturation::{
    chi_box, cox_table, sections_with_witnesses, witness_set, Caps, CoxOptions, Exactness,
};
use coxgit::torus_git::{descent_lattice, git_chambers, unstable_strata};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{join, join_all, Metadata, Report};
use crate::spec::{merge_caps, Assertions, Kind, Problem, ProblemSpec, QuiverProblem, TorusProblem};
use crate::{Cli, CliError, Command};

type Result<T> = std::result::Result<T, CliError>;

fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Input(msg.into()))
}

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        other => panic!("expected a string label, got {other:?}"),
    }
}

fn render_all(ps: &[Polynomial], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.render(names)).collect()
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Input(format!("{what}: `{x}` is not an integer")))
        })
        .collect()
}

/// `a..b` (inclusive) or a single integer.
fn parse_range(s: &str, what: &str) -> Result<(i64, i64)> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| CliError::Input(format!("{what}: `{s}` is not a range lo..hi")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return input(format!("{what}: empty range {s}"));
    }
    Ok((lo, hi))
}

/// One range for all coordinates, or one per coordinate.
pub fn parse_box(s: &str, rank: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    let parts: Vec<(i64, i64)> =
        s.split(',').map(|p| parse_range(p, "--chi-box")).collect::<Result<_>>()?;
    let parts = match parts.len() {
        1 => vec![parts[0]; rank],
        k if k == rank => parts,
        k => return input(format!("--chi-box has {k} ranges for a rank {rank} lattice")),
    };
    Ok(parts.into_iter().unzip())
}

fn load(arg: &str) -> Result<Problem> {
    Ok(ProblemSpec::load(arg)?.resolve()?)
}

fn torus_problem(arg: &str) -> Result<TorusProblem> {
    match load(arg)? {
        Problem::Torus(t) => Ok(t),
        _ => input(format!("`{arg}` is not a torus or hypertoric-preset problem")),
    }
}

fn theta_for(cli: &Cli, t: &TorusProblem) -> Result<Character> {
    let theta = match &cli.theta {
        Some(s) => Character(parse_ints(s, "--theta")?),
        None => match &t.theta {
            Some(th) => th.clone(),
            None => return input("no theta: give --theta or set `theta` in the problem file"),
        },
    };
    if theta.rank() != t.action.rank() {
        return input(format!(
            "theta has length {}, expected rank {}",
            theta.rank(),
            t.action.rank()
        ));
    }
    Ok(theta)
}

fn positive_theta(cli: &Cli, from_file: Option<u32>) -> Result<u32> {
    match &cli.theta {
        Some(s) => match parse_ints(s, "--theta")?.as_slice() {
            [t] if *t > 0 => Ok(*t as u32),
            _ => input("--theta must be a single positive integer here"),
        },
        None => from_file.ok_or_else(|| CliError::Input("no theta: give --theta".into())),
    }
}

fn meta(kind: Option<Kind>, caps: Option<Caps>, path: &str, assertions: Assertions, exactness: &str) -> Metadata {
    Metadata {
        kind,
        caps,
        path: path.into(),
        assertions,
        exactness: exactness.into(),
        stamp: None,
    }
}

fn report(command: &'static str, metadata: Metadata, result: Value, header: &'static [&'static str]) -> Report {
    Report {
        command,
        metadata,
        result,
        header,
        rows: Vec::new(),
        text: Vec::new(),
        code: 0,
        warnings: Vec::new(),
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Chambers { problem } => chambers(cli, problem),
        Command::Unstable { problem } => unstable(cli, problem),
        Command::Descent { problem } => descent(cli, problem),
        Command::Sections {
            problem,
            chi,
            witness,
        } => sections(cli, problem, chi, *witness),
        Command::Cox {
            problem,
            chi_box,
            oracle,
        } => cox(cli, problem, chi_box, *oracle),
        Command::QuiverSl {
            problem,
            chi_box,
            bases,
        } => quiver_sl(cli, problem, chi_box, *bases),
        Command::Adhm { problem, n, bases } => adhm(cli, problem.as_deref(), *n, *bases),
        Command::Hilb {
            problem,
            n,
            m,
            bidegree_box,
        } => hilb(problem.as_deref(), *n, m, bidegree_box),
        Command::Verify { n } => verify(cli, *n),
    }
}

fn chambers(cli: &Cli, arg: &str) -> Result<Report> {
    let t = torus_problem(arg)?;
    let fan = git_chambers(&t.action)?;
    let theta = match (&cli.theta, &t.theta) {
        (None, None) => None,
        _ => Some(theta_for(cli, &t)?),
    };
    let located = theta.as_ref().and_then(|th| {
        let c = fan.locate(th)?;
        fan.chambers.iter().position(|x| x == c)
    });
    let mut r = report(
        "chambers",
        meta(Some(t.kind), None, "polyhedral", t.assertions, "exact"),
        json!({
            "variables": t.names,
            "weights": t.action.rows(),
            "theta": theta,
            "theta_chamber": located,
            "fan": fan,
        }),
        &["chamber", "interior_point", "inequalities", "rays"],
    );
    r.text.push(format!(
        "{} chamber(s) in a rank {} effective cone with rays {}",
        fan.chambers.len(),
        fan.rank,
        join_all(&fan.effective_cone)
    ));
    for (i, c) in fan.chambers.iter().enumerate() {
        r.rows.push(vec![
            i.to_string(),
            join(c.interior_point.coords()),
            join_all(&c.inequalities),
            join_all(&c.rays),
        ]);
        let mark = if located == Some(i) { "  <- theta" } else { "" };
        r.text.push(format!(
            "chamber {i}: interior point ({}), rays {}, inequalities {}{mark}",
            join(c.interior_point.coords()),
            join_all(&c.rays),
            join_all(&c.inequalities)
        ));
    }
    if theta.is_some() && located.is_none() {
        r.warnings.push("theta lies on a wall or outside the effective cone".into());
    }
    Ok(r)
}

fn names_of(names: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| names[i].clone()).collect()
}

fn unstable(cli: &Cli, arg: &str) -> Result<Report> {
    let t = torus_problem(arg)?;
    let theta = theta_for(cli, &t)?;
    let caps = merge_caps(t.caps, cli.max_degree, cli.max_sat_power);
    let ideal = (!t.ideal.is_zero()).then_some(&t.ideal);
    let outcome = unstable_strata(&t.action, &theta, ideal, caps.max_degree)?;
    let header = &[
        "support",
        "ambient_codim",
        "codim_on_v",
        "dim_v",
        "dim_stratum",
        "truncation_degree",
        "confidence",
    ];
    let Some(strata) = outcome.strata() else {
        let mut r = report(
            "unstable",
            meta(Some(t.kind), Some(caps), "support-enumeration", t.assertions, "exact"),
            json!({ "theta": theta, "outcome": "not-effective", "strata": [] }),
            header,
        );
        r.text.push("theta is not effective: every point is unstable".into());
        r.warnings.push("theta is not effective".into());
        return Ok(r);
    };
    let heuristic = strata.iter().any(|s| s.codim_on_v.is_some());
    let all: Vec<usize> = (0..t.names.len()).collect();
    let listed: Vec<Value> = strata
        .iter()
        .map(|s| {
            let vanishing: Vec<usize> = all.iter().copied().filter(|i| !s.support.contains(i)).collect();
            json!({
                "support": names_of(&t.names, &s.support),
                "vanishing": names_of(&t.names, &vanishing),
                "ambient_codim": s.ambient_codim,
                "codim_on_v": s.codim_on_v,
            })
        })
        .collect();
    let mut r = report(
        "unstable",
        meta(
            Some(t.kind),
            Some(caps),
            "support-enumeration",
            t.assertions,
            if heuristic { "heuristic" } else { "exact" },
        ),
        json!({ "theta": theta, "outcome": "strata", "strata": listed }),
        header,
    );
    for s in strata {
        let support = names_of(&t.names, &s.support);
        let vanishing: Vec<String> = t.names.iter().filter(|v| !support.contains(v)).cloned().collect();
        let c = s.codim_on_v.as_ref();
        r.rows.push(vec![
            support.join(";"),
            s.ambient_codim.to_string(),
            c.map_or(String::new(), |c| c.value.to_string()),
            c.map_or(String::new(), |c| c.dim_v.to_string()),
            c.map_or(String::new(), |c| c.dim_stratum.to_string()),
            c.map_or(String::new(), |c| c.truncation_degree.to_string()),
            c.map_or(String::new(), |c| label(&c.confidence)),
        ]);
        let mut line = format!(
            "{{{} = 0}}: ambient codimension {}",
            vanishing.join(" = "),
            s.ambient_codim
        );
        if let Some(c) = c {
            line += &format!(
                ", codimension on V {} ({}, Hilbert functions to degree {})",
                c.value,
                label(&c.confidence),
                c.truncation_degree
            );
        }
        r.text.push(line);
    }
    if strata.is_empty() {
        r.text.push("no unstable points".into());
    }
    Ok(r)
}

fn descent(cli: &Cli, arg: &str) -> Result<Report> {
    let t = torus_problem(arg)?;
    let theta = theta_for(cli, &t)?;
    let lattice = descent_lattice(&t.action, &theta)?;
    let mut r = report(
        "descent",
        meta(Some(t.kind), None, "stabilizer-lattices", t.assertions, "exact"),
        json!({ "theta": theta, "lattice": lattice }),
        &["row", "vector"],
    );
    r.text.push(format!(
        "rank {}{}{}",
        lattice.rank,
        lattice.index.map_or(String::new(), |i| format!(", index {i}")),
        if lattice.ambient_generic { ", ambient-generic" } else { "" }
    ));
    for (i, v) in lattice.basis.iter().enumerate() {
        r.rows.push(vec![i.to_string(), join(v)]);
        r.text.push(format!("  ({})", join(v)));
    }
    Ok(r)
}

fn sections(cli: &Cli, arg: &str, chi: &str, witness: usize) -> Result<Report> {
    let t = torus_problem(arg)?;
    let theta = theta_for(cli, &t)?;
    let caps = merge_caps(t.caps, cli.max_degree, cli.max_sat_power);
    let chi = Character(parse_ints(chi, "--chi")?);
    t.action.check_character(&chi)?;
    let ws = witness_set(&t.ideal, &t.action, &theta, caps)?;
    let piece = sections_with_witnesses(&t.ideal, &t.action, &ws, witness, &chi, caps)?;
    let names = &t.names;
    let den = piece.denominator().render(names);
    let slices: Vec<Value> = piece
        .slices
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "dim": s.dim(),
                "dim_next_power": s.dim_next_power,
                "basis": s.basis.iter().map(|f| json!({
                    "numerator": f.numerator.render(names),
                    "witness_power": f.witness_power,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let exactness = label(&piece.exactness);
    let mut r = report(
        "sections",
        meta(Some(t.kind), Some(caps), "generic", t.assertions, &exactness),
        json!({
            "theta": theta,
            "chi": chi,
            "witnesses": {
                "level": ws.level,
                "degrees": ws.degrees,
                "certified": ws.certified,
                "polynomials": render_all(&ws.witnesses, names),
            },
            "distinguished": witness,
            "denominator": den,
            "slices": slices,
            "exactness": exactness,
        }),
        &["chi", "degree", "dim", "dim_next_power", "exactness"],
    );
    r.text.push(format!("chi = ({}), denominator {den}", join(chi.coords())));
    for s in &piece.slices {
        r.rows.push(vec![
            join(chi.coords()),
            s.degree.to_string(),
            s.dim().to_string(),
            s.dim_next_power.to_string(),
            exactness.clone(),
        ]);
        let fr: Vec<String> = s
            .basis
            .iter()
            .map(|f| match f.witness_power {
                0 => f.numerator.render(names),
                k => format!("({})/({den})^{k}", f.numerator.render(names)),
            })
            .collect();
        r.text.push(format!("degree {}: dim {}  {}", s.degree, s.dim(), fr.join(", ")));
    }
    if !ws.certified {
        r.warnings.push("witnesses do not cover every semistable support within caps".into());
    }
    if piece.exactness == Exactness::Truncated {
        r.code = 2;
        r.warnings.push("caps exhausted: dimensions did not stabilize".into());
    }
    Ok(r)
}

fn cox(cli: &Cli, arg: &str, bx: &str, oracle: bool) -> Result<Report> {
    let t = torus_problem(arg)?;
    let theta = theta_for(cli, &t)?;
    let caps = merge_caps(t.caps, cli.max_degree, cli.max_sat_power);
    let (lo, hi) = parse_box(bx, t.action.rank())?;
    let chis = chi_box(&lo, &hi);
    let options = CoxOptions {
        s2_asserted: t.assertions.s2,
        force_generic: oracle,
    };
    let table = match cox_table(&t.ideal, &t.action, &theta, &chis, caps, options) {
        Err(coxgit::Error::NotEffective) => {
            return input("theta is not effective: the semistable locus is empty")
        }
        other => other?,
    };
    let path = label(&table.path);
    let exactness = if table.truncated() {
        Exactness::Truncated
    } else {
        table.rows.first().map_or(Exactness::Exact, |r| r.exactness)
    };
    let mut result = serde_json::to_value(&table).expect("serializable");
    result["variables"] = json!(t.names);
    result["chi_box"] = json!({ "lo": lo, "hi": hi });
    result["witnesses"] = match &table.witnesses {
        Some(w) => json!({
            "level": w.level,
            "degrees": w.degrees,
            "certified": w.certified,
            "polynomials": render_all(&w.witnesses, &t.names),
        }),
        None => Value::Null,
    };
    let mut r = report(
        "cox",
        meta(Some(t.kind), Some(caps), &path, t.assertions, &label(&exactness)),
        result,
        &["chi", "degree", "dim", "exactness", "path"],
    );
    r.text.push(format!(
        "theta = ({}), path {path}{}",
        join(theta.coords()),
        if table.fast_path_eligible { " (codimension-two shortcut eligible)" } else { "" }
    ));
    r.text.push(format!(
        "{:>12}  {}",
        "chi \\ degree",
        (0..=caps.max_degree).map(|d| format!("{d:>4}")).collect::<String>()
    ));
    for row in &table.rows {
        let e = label(&row.exactness);
        for (d, dim) in row.dims.iter().enumerate() {
            r.rows.push(vec![
                join(row.chi.coords()),
                d.to_string(),
                dim.to_string(),
                e.clone(),
                path.clone(),
            ]);
        }
        r.text.push(format!(
            "{:>12}  {}{}",
            join(row.chi.coords()),
            row.dims.iter().map(|d| format!("{d:>4}")).collect::<String>(),
            if row.exactness == Exactness::Truncated { "  (truncated)" } else { "" }
        ));
    }
    if table.truncated() {
        r.code = 2;
        r.warnings.push("caps exhausted: some rows did not stabilize".into());
    }
    Ok(r)
}

fn quiver_sl(cli: &Cli, arg: &str, bx: &str, bases: bool) -> Result<Report> {
    let QuiverProblem { names, preset, caps } = match load(arg)? {
        Problem::Quiver(q) => q,
        _ => return input(format!("`{arg}` is not a quiver problem")),
    };
    let caps = merge_caps(caps, cli.max_degree, cli.max_sat_power);
    let (lo, hi) = parse_box(bx, preset.vertices - 1)?;
    let lie = preset.lie_action();
    let chis = chi_box(&lo, &hi);
    let cells: Vec<(usize, u32)> =
        (0..chis.len()).flat_map(|i| (0..=caps.max_degree).map(move |d| (i, d))).collect();
    let pieces = cells
        .par_iter()
        .map(|&(i, d)| {
            let w = preset.torus_character(&chis[i])?;
            sl_weight_space(&lie, &w, d, None)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let per = caps.max_degree as usize + 1;
    let mut rows = Vec::new();
    let mut r = report(
        "quiver-sl",
        meta(Some(Kind::Quiver), Some(caps), "sl-derivation-kernel", Assertions::default(), "exact"),
        Value::Null,
        &["chi", "degree", "dim"],
    );
    for (i, chi) in chis.iter().enumerate() {
        let slice = &pieces[i * per..(i + 1) * per];
        let dims: Vec<usize> = slice.iter().map(|b| b.dim()).collect();
        let mut row = json!({
            "chi": chi,
            "torus_weight": preset.torus_character(chi)?,
            "dims": dims,
        });
        if bases {
            row["bases"] = json!(slice.iter().map(|b| render_all(&b.basis, &names)).collect::<Vec<_>>());
        }
        rows.push(row);
        for (d, dim) in dims.iter().enumerate() {
            r.rows.push(vec![join(chi.coords()), d.to_string(), dim.to_string()]);
        }
        r.text.push(format!(
            "chi = ({}): dims by degree {}",
            join(chi.coords()),
            dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        ));
        for b in slice.iter().filter(|b| b.dim() > 0 && b.dim() <= 6) {
            r.text.push(format!("  degree {}: {}", b.degree, render_all(&b.basis, &names).join(", ")));
        }
    }
    r.result = json!({
        "vertices": preset.vertices,
        "arrows": preset.arrows,
        "dims": preset.dims,
        "base_vertex": preset.base_vertex,
        "variables": names,
        "rows": rows,
    });
    Ok(r)
}

fn adhm(cli: &Cli, arg: Option<&str>, n: Option<usize>, bases: bool) -> Result<Report> {
    let (file_n, file_theta, file_caps) = match arg.map(load).transpose()? {
        None => (None, None, Default::default()),
        Some(Problem::Adhm { n, theta, caps }) => (n, theta, caps),
        Some(_) => return input("the problem file is not of kind adhm"),
    };
    let n = n.or(file_n).ok_or_else(|| CliError::Input("give --n".into()))?;
    if n == 0 {
        return input("--n must be positive");
    }
    let theta = positive_theta(cli, file_theta)?;
    let caps = merge_caps(file_caps, cli.max_degree, cli.max_sat_power);
    let names = ADHMPreset::new(n)?.variable_names();
    let pieces = (0..=caps.max_degree)
        .into_par_iter()
        .map(|d| adhm_weight_space(n, theta as i64, d))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut r = report(
        "adhm",
        meta(Some(Kind::Adhm), Some(caps), "sl-derivation-kernel", Assertions::default(), "exact"),
        Value::Null,
        &["n", "theta", "degree", "dim"],
    );
    let degrees: Vec<Value> = pieces
        .iter()
        .map(|b| {
            let mut v = json!({ "degree": b.degree, "dim": b.dim() });
            if bases {
                v["basis"] = json!(render_all(&b.basis, &names));
            }
            v
        })
        .collect();
    for b in &pieces {
        r.rows.push(vec![n.to_string(), theta.to_string(), b.degree.to_string(), b.dim().to_string()]);
        r.text.push(format!("degree {}: dim {}", b.degree, b.dim()));
    }
    r.result = json!({ "n": n, "theta": theta, "variables": names, "degrees": degrees });
    Ok(r)
}

fn hilb(arg: Option<&str>, n: Option<usize>, m: &str, bx: &str) -> Result<Report> {
    let file_n = match arg.map(load).transpose()? {
        None => None,
        Some(Problem::Hilb { n, .. }) => n,
        Some(_) => return input("the problem file is not of kind hilb"),
    };
    let n = n.or(file_n).ok_or_else(|| CliError::Input("give --n".into()))?;
    if n == 0 {
        return input("--n must be positive");
    }
    let m_range = parse_range(m, "--m")?;
    let b = parse_ints(bx, "--box")?;
    let bidegree_box = match b.as_slice() {
        [a, b] if *a >= 0 && *b >= 0 => (*a as u32, *b as u32),
        _ => return input("--box must be two non-negative integers a,b"),
    };
    let table = cox_hilb_table(n, m_range, bidegree_box);
    let series = hilb_series(&table);
    let mut r = report(
        "hilb",
        meta(Some(Kind::Hilb), None, "isotypic-projection", Assertions::default(), "exact"),
        json!({
            "table": table,
            "series": series.iter().map(|(m, s)| json!({ "m": m, "series": s })).collect::<Vec<_>>(),
        }),
        &["n", "m", "a", "b", "dim"],
    );
    for e in &table.entries {
        r.rows.push(vec![n.to_string(), e.m.to_string(), e.a.to_string(), e.b.to_string(), e.dim.to_string()]);
    }
    r.text.push(format!(
        "n = {n}, bidegrees up to ({}, {}), convention {}",
        bidegree_box.0, bidegree_box.1, table.convention
    ));
    for (m, s) in series {
        r.text.push(format!("m = {m:>3}: {s}"));
    }
    Ok(r)
}

fn verify(cli: &Cli, n: usize) -> Result<Report> {
    if n == 0 {
        return input("--n must be positive");
    }
    let theta = positive_theta(cli, None)?;
    let caps = merge_caps(Default::default(), cli.max_degree, cli.max_sat_power);
    let rep = verify_ginzburg(n, theta, caps.max_degree)?;
    let mut r = report(
        "verify",
        meta(None, Some(caps), "epsilon-pullback", Assertions::default(), "exact"),
        serde_json::to_value(&rep).expect("serializable"),
        &[
            "n",
            "theta",
            "degree",
            "adhm_dim",
            "pullback_dim",
            "product_degree",
            "product_dim",
            "matches",
        ],
    );
    for c in &rep.degrees {
        r.rows.push(vec![
            n.to_string(),
            theta.to_string(),
            c.degree.to_string(),
            c.adhm_dim.to_string(),
            c.pullback_dim.to_string(),
            c.product_degree.map_or(String::new(), |d| d.to_string()),
            c.product_dim.to_string(),
            c.matches.to_string(),
        ]);
        r.text.push(format!(
            "degree {:>2}: adhm {:>4}  pullback {:>4}  A^{theta} in degree {:>2}: {:>4}  {}",
            c.degree,
            c.adhm_dim,
            c.pullback_dim,
            c.product_degree.map_or("-".to_string(), |d| d.to_string()),
            c.product_dim,
            if c.matches { "ok" } else { "MISMATCH" }
        ));
    }
    r.text.insert(
        0,
        format!(
            "n = {n}, theta = {theta}, degrees 0..={}, shift {} per point: {}",
            caps.max_degree,
            rep.shift_per_point,
            if rep.matched { "match" } else { "mismatch" }
        ),
    );
    if !rep.matched {
        r.code = 3;
        r.warnings.push(format!(
            "pullback does not match the product space in degree {}",
            rep.first_failure.unwrap_or_default()
        ));
    }
    Ok(r)
}
