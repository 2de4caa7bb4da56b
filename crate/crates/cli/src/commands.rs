use std::path::Path;

use tropicalis::calculus::{
    gap_table, idem_integral, idem_integral_wrt, idem_measure, legendre, CorpusFunction, LegendreMode, XiGrid,
    DEFAULT_HS,
};
use tropicalis::duality::{project_lower, project_upper, run_suite, ClosureKind, GeneratorSet};
use tropicalis::io;
use tropicalis::linalg::{kleene_star, shortest_paths, solve_bellman, BellmanMethod, TropMatrix};
use tropicalis::order::{
    complete_semiring, is_integrally_closed, macneille_completion, members, standard_order, validate_semifield,
    validate_semiring, CayleyStructure,
};
use tropicalis::semiring::fmt_extended;
use tropicalis::{Error, Result, SemiringDescriptor};

use crate::output::{Cell, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidateMode {
    Semiring,
    Semifield,
    IntegrallyClosed,
}

pub fn validate(path: &Path, mode: ValidateMode) -> Result<Output> {
    let s = io::parse_cayley(&io::read_file(path)?)?;
    let report = match mode {
        ValidateMode::Semiring => validate_semiring(&s),
        ValidateMode::Semifield => validate_semifield(&s),
        ValidateMode::IntegrallyClosed => is_integrally_closed(&s),
    };
    let mut out = Output::new(&["subject", "check", "verdict", "witness"]);
    let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
    for c in &report.checks {
        let w = c.witness.clone().unwrap_or_default();
        if !c.passed {
            out.line(format!("FAIL {} witness={w}", c.name));
        }
        out.row(vec![
            report.subject.as_str().into(),
            c.name.as_str().into(),
            verdict(c.passed).into(),
            w.into(),
        ]);
    }
    out.row(vec![
        report.subject.as_str().into(),
        "all".into(),
        verdict(report.passed()).into(),
        format!("{}/{}", report.pass_count(), report.checks.len()).into(),
    ]);
    out.line(report.summary());
    if !report.passed() {
        out.failure = Some(report.summary());
    }
    Ok(out)
}

pub fn complete(path: &Path) -> Result<Output> {
    let s = io::parse_cayley(&io::read_file(path)?)?;
    let (structure, lattice) = if s.mul_table().is_some() {
        let c = complete_semiring(&s)?;
        (c.structure, c.lattice)
    } else {
        let lattice = macneille_completion(&standard_order(&s)?)?;
        let k = lattice.len();
        let add = (0..k).map(|a| (0..k).map(|b| lattice.sup(&[a, b])).collect()).collect();
        (CayleyStructure::new(lattice.labels(s.labels()), add)?, lattice)
    };
    let mut out = Output::new(&["index", "label", "cut", "embedded"]);
    for k in 0..lattice.len() {
        let cut: Vec<&str> = members(lattice.cut(k)).map(|i| s.label(i)).collect();
        out.row(vec![
            k.into(),
            structure.label(k).into(),
            cut.join(" ").into(),
            lattice.embedding().contains(&k).into(),
        ]);
    }
    out.text = io::write_cayley(&structure);
    Ok(out)
}

pub fn solve_path(path: &Path, d: SemiringDescriptor, source: usize, target: Option<usize>) -> Result<Output> {
    let g = io::parse_graph(&io::read_file(path)?)?;
    let r = shortest_paths(&g, d, source)?;
    let targets: Vec<usize> = match target {
        Some(t) if t >= g.n => return Err(Error::Domain(format!("target {t} is not a node"))),
        Some(t) => vec![t],
        None => (0..g.n).collect(),
    };
    let mut out = Output::new(&["source", "target", "dist", "path"]);
    for t in targets {
        let path = r
            .path_to(t)
            .map(|p| p.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        let dist = r.dist[t];
        out.line(format!("{source}→{t} dist={dist} path={path}"));
        out.row(vec![source.into(), t.into(), dist.into(), path.into()]);
    }
    Ok(out)
}

fn matrix_rows(out: &mut Output, prefix: Vec<Cell>, m: &TropMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let mut r = prefix.clone();
            r.extend([i.into(), j.into(), m.get(i, j).into()]);
            out.row(r);
        }
    }
}

pub fn star(path: &Path) -> Result<Output> {
    let a = io::parse_matrix(&io::read_file(path)?)?;
    let s = kleene_star(&a)?;
    let mut out = Output::new(&["row", "col", "value"]);
    matrix_rows(&mut out, vec![], &s);
    out.text = io::write_matrix(&s);
    Ok(out)
}

pub fn bellman(path: &Path, rhs: Option<&Path>, method: Option<BellmanMethod>) -> Result<Output> {
    let h = io::parse_matrix(&io::read_file(path)?)?;
    let f = match rhs {
        Some(p) => io::parse_matrix(&io::read_file(p)?)?,
        None => TropMatrix::identity(h.descriptor(), h.rows()),
    };
    let methods = method.map_or(BellmanMethod::ALL.to_vec(), |m| vec![m]);
    let mut out = Output::new(&["method", "iterations", "row", "col", "value"]);
    let mut first: Option<TropMatrix> = None;
    for m in methods {
        let sol = solve_bellman(&h, &f, m)?;
        out.line(format!("# method={} iterations={}", m.name(), sol.iterations));
        out.text.push_str(&io::write_matrix(&sol.x));
        matrix_rows(&mut out, vec![m.name().into(), sol.iterations.into()], &sol.x);
        match &first {
            None => first = Some(sol.x),
            Some(x) if *x != sol.x => {
                out.failure = Some(format!("method {} disagrees with {}", m.name(), BellmanMethod::Jacobi.name()));
            }
            Some(_) => {}
        }
    }
    Ok(out)
}

pub fn duality_check(dim: usize, trials: usize, seed: u64) -> Result<Output> {
    let results = run_suite(dim, trials, seed)?;
    let mut out = Output::new(&["suite", "verdict", "trials", "failures", "first_failure"]);
    out.header.push(("seed", seed.into()));
    for r in &results {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict} {} trials={} failures={}", r.name, r.trials, r.failures);
        if let Some(w) = &r.first_failure {
            line.push_str(&format!(" first_failure={w}"));
        }
        out.line(line);
        out.row(vec![
            r.name.into(),
            verdict.into(),
            r.trials.into(),
            r.failures.into(),
            r.first_failure.clone().unwrap_or_default().into(),
        ]);
    }
    if let Some(r) = results.iter().find(|r| !r.passed()) {
        out.failure = Some(format!("suite {} has {} failures", r.name, r.failures));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectMode {
    Upper,
    Lower,
}

pub fn project(vector: &Path, gens: &Path, mode: ProjectMode) -> Result<Output> {
    let x = io::parse_vector(&io::read_file(vector)?)?;
    let gs = io::parse_vectors(&io::read_file(gens)?)?;
    let mut out = Output::new(&["index", "value"]);
    let p = match mode {
        ProjectMode::Upper => {
            let p = project_upper(&x, &GeneratorSet::new(ClosureKind::InfClosure, gs)?)?;
            if !p.undominated.is_empty() {
                let ids: Vec<String> = p.undominated.iter().map(usize::to_string).collect();
                out.header.push(("undominated", ids.join(",").into()));
            }
            p.vector
        }
        ProjectMode::Lower => project_lower(&x, &GeneratorSet::new(ClosureKind::SupSpan, gs)?)?,
    };
    for (i, &v) in p.values().iter().enumerate() {
        out.row(vec![i.into(), v.into()]);
    }
    out.text = io::write_vectors(&[p])?;
    Ok(out)
}

pub fn legendre_cmd(path: &Path, xi: &XiGrid, fenchel: bool, fast: bool) -> Result<Output> {
    let phi = io::parse_sampled(&io::read_file(path)?)?;
    let mode = if fast { LegendreMode::Fast } else { LegendreMode::Brute };
    let r = legendre(&phi, xi, fenchel, mode)?;
    let mut out = Output::new(&["xi", "value"]);
    let used = match r.mode {
        LegendreMode::Fast => "fast",
        LegendreMode::Brute => "brute",
    };
    out.header.push(("mode", used.into()));
    out.notes.extend(r.note);
    let t = &r.transform;
    for (j, &v) in t.values().iter().enumerate() {
        out.row(vec![t.x(j).into(), v.into()]);
    }
    out.text = io::write_sampled(t);
    Ok(out)
}

pub fn hj_demo(init: &str, t: f64, hs: &[f64], window: (f64, f64)) -> Result<Output> {
    let s0 = match init.strip_prefix("file:") {
        Some(p) => io::parse_sampled(&io::read_file(p)?)?,
        None => init.parse::<CorpusFunction>()?.sampled(),
    };
    let hs = if hs.is_empty() { &DEFAULT_HS[..] } else { hs };
    let rows = gap_table(&s0, t, hs, window)?;
    let mut out = Output::new(&["init", "t", "h", "gap", "at"]);
    for r in &rows {
        out.line(format!(
            "init={init} t={} h={} gap={} at={}",
            fmt_extended(t),
            fmt_extended(r.h),
            fmt_extended(r.gap),
            fmt_extended(r.at)
        ));
        out.row(vec![init.into(), t.into(), r.h.into(), r.gap.into(), r.at.into()]);
    }
    Ok(out)
}

pub fn integrate(path: &Path, with: Option<&Path>, indices: Option<&[usize]>) -> Result<Output> {
    let phi = io::parse_sampled(&io::read_file(path)?)?;
    let mut out = Output::new(&["quantity", "value"]);
    let mut emit = |name: &str, v: f64| {
        out.line(format!("{name}={}", fmt_extended(v)));
        out.row(vec![name.into(), v.into()]);
    };
    emit("integral", idem_integral(&phi));
    if let Some(p) = with {
        let psi = io::parse_sampled(&io::read_file(p)?)?;
        emit("integral_wrt", idem_integral_wrt(&phi, &psi)?);
    }
    if let Some(ix) = indices {
        emit("measure", idem_measure(&phi, ix)?);
    }
    Ok(out)
}
