use std::sync::Arc;

use anyhow::bail;
use steinberg::boundary::{
    boundary_value, coboundary, end_chart, end_count, kernel_preimage, lift, sphere_vertex_count,
    BoundaryFunction, ChartBall, TreeBall, ZeroCochain,
};
use steinberg::building::{standard_chamber, vertex_label, BallGraph, LatticeClass, PrimeContext};
use steinberg::coxeter::{affine_diagram, bfs_growth_with, AffineTypeLabel, CoxeterSystem, Family, Order};
use steinberg::exact::{self, to_text, Rational};
use steinberg::harmonic::{decay_profile, defect_scan, iwahori_vector, min_distance_chamber, rigidity_report};
use steinberg::hecke::{multiply, special_character, HeckeElement};
use steinberg::period::{geometric_lambda, lambda_partial_with, PeriodReport};
use steinberg::poincare::{bott_rational, expand, exponents_for};
use steinberg::Exec;

use crate::report::{Report, Table};

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn a_label(n: usize) -> anyhow::Result<AffineTypeLabel> {
    Ok(AffineTypeLabel::new(Family::A, n - 1)?)
}

pub fn growth(label: AffineTypeLabel, cutoff: usize, exec: Exec) -> anyhow::Result<Report> {
    let mut rep = Report::new("growth", vec![("type", label.to_string()), ("K", cutoff.to_string())]);
    let enumerated = bfs_growth_with(&affine_diagram(label)?, cutoff, exec)?.counts;
    let series = expand(&bott_rational(&exponents_for(label)?)?, cutoff)?;
    let closed: Vec<String> = series.coefficients.iter().map(to_text).collect();
    let mut t = Table::new("growth", &["k", "enumerated", "closed_form", "equal"]);
    for (k, (e, c)) in enumerated.iter().zip(&series.coefficients).enumerate() {
        let eq = rep.check(exact::int(*e as i64) == *c);
        t.push(vec![k.to_string(), e.to_string(), to_text(c), yes(eq)]);
    }
    rep.tables.push(t);
    rep.notes.push(format!("enumerated:  {}", list(&enumerated)));
    rep.notes.push(format!("closed form: {}", list(&closed)));
    Ok(rep)
}

pub fn period(label: AffineTypeLabel, q: u64, cutoff: usize, radius: Option<usize>, exec: Exec) -> anyhow::Result<Report> {
    let mut params = vec![("type", label.to_string()), ("q", q.to_string()), ("K", cutoff.to_string())];
    if let Some(r) = radius {
        params.push(("R", r.to_string()));
    }
    let mut rep = Report::new("period", params);
    let report = PeriodReport::new_with(label, q, cutoff, exec)?;
    let mut sums = Table::new("partial_sums", &["k", "S_k", "source"]);
    for (k, s) in report.partial_sums.iter().enumerate() {
        sums.push(vec![k.to_string(), to_text(s), "enumerated".into()]);
    }
    rep.tables.push(sums);
    let last = report.partial_sums.last().expect("K ≥ 0");
    let gap = last - &report.closed_form;
    let mut summary = Table::new("summary", &["quantity", "value", "source"]);
    summary.push(vec!["q_E".into(), report.q_e.to_string(), "q_F^2".into()]);
    summary.push(vec!["closed_form".into(), to_text(&report.closed_form), "closed-form".into()]);
    summary.push(vec!["majorant".into(), to_text(&report.majorant), "closed-form".into()]);
    summary.push(vec!["tail_bound".into(), to_text(&report.tail_bound), "closed-form".into()]);
    summary.push(vec!["S_K - closed_form".into(), to_text(&gap), "enumerated".into()]);
    rep.tables.push(summary);
    rep.check(report.certified());
    rep.check(report.closed_form != exact::int(0));
    rep.notes.push(format!("closedForm: {}", to_text(&report.closed_form)));
    rep.notes.push(format!("certified: {}", yes(report.certified())));

    if let Some(r) = radius {
        if label.family != Family::A || label.rank > 2 {
            bail!("geometric cross-check needs type A1~ or A2~");
        }
        let ctx = PrimeContext::for_radius(q, label.rank + 1, r)?;
        let geo = geometric_lambda(&ctx, r)?;
        let alg = lambda_partial_with(label, q, r, exec)?;
        let counts = bfs_growth_with(&affine_diagram(label)?, r, exec)?.counts;
        let mut t = Table::new(
            "geometric",
            &["k", "shell_enumerated", "shell_closed_form", "S_k_geometric", "S_k_algebraic", "equal"],
        );
        for k in 0..=r {
            let expected = counts[k] * q.pow(k as u32);
            let eq = rep.check(geo.shells[k] == expected && geo.partial_sums[k] == alg[k]);
            t.push(vec![
                k.to_string(),
                geo.shells[k].to_string(),
                expected.to_string(),
                to_text(&geo.partial_sums[k]),
                to_text(&alg[k]),
                yes(eq),
            ]);
        }
        rep.tables.push(t);
    }
    rep.detail = Some(serde_json::to_value(report.to_json())?);
    Ok(rep)
}

fn build_ball(n: usize, p: u64, radius: usize, exec: Exec) -> anyhow::Result<BallGraph> {
    let ctx = PrimeContext::for_radius(p, n, radius)?;
    Ok(BallGraph::build_with(&standard_chamber(&ctx), radius, &ctx, exec)?)
}

pub fn harmonic(n: usize, p: u64, radius: usize, exec: Exec) -> anyhow::Result<Report> {
    let mut rep = Report::new("harmonic", vec![("n", n.to_string()), ("p", p.to_string()), ("R", radius.to_string())]);
    let ball = build_ball(n, p, radius, exec)?;
    let f = iwahori_vector(ball.base(), p)?;
    let scan = defect_scan(&f, &ball, exec)?;
    rep.check(scan.nonzero == 0);

    let faces: Vec<_> = ball.interior_faces().map(|e| &e.face).collect();
    let minima = exec.map(&faces, |face| min_distance_chamber(face, &ball).is_ok());
    let unique = minima.iter().filter(|&&b| b).count();
    rep.check(unique == faces.len());

    let profile = decay_profile(&f, &ball)?;
    let mut decay = Table::new("decay", &["k", "max_abs_value", "q^-k", "equal"]);
    for (k, v) in &profile {
        let expected = exact::rat(1, (p as i64).pow(*k as u32));
        let eq = rep.check(*v == expected);
        decay.push(vec![k.to_string(), to_text(v), to_text(&expected), yes(eq)]);
    }

    let mut checks = Table::new("checks", &["check", "cases", "passed"]);
    checks.push(vec!["harmonicity_defect".into(), scan.faces.to_string(), (scan.faces - scan.nonzero).to_string()]);
    checks.push(vec!["unique_minimum".into(), faces.len().to_string(), unique.to_string()]);
    rep.notes.push(format!("defects: {} nonzero / {} faces", scan.nonzero, scan.faces));
    rep.notes.push(format!("unique minimum: {unique} / {} faces", faces.len()));
    let r = rigidity_report(&ball);
    rep.check(r.kernel_is_trivial());
    checks.push(vec!["rigidity_rank".into(), r.unknowns.to_string(), r.rank.to_string()]);
    rep.notes.push(format!("rigidity: rank {} / {} unknowns", r.rank, r.unknowns));
    rep.tables.push(checks);
    rep.tables.push(decay);
    Ok(rep)
}

pub fn ball(n: usize, p: u64, radius: usize, exec: Exec) -> anyhow::Result<Report> {
    let mut rep = Report::new("ball", vec![("n", n.to_string()), ("p", p.to_string()), ("R", radius.to_string())]);
    let ball = build_ball(n, p, radius, exec)?;
    let ctx = *ball.context();
    let counts = bfs_growth_with(&affine_diagram(a_label(n)?)?, radius, exec)?.counts;
    let shells = ball.shell_counts();
    let mut t = Table::new("shells", &["k", "enumerated", "N(k)", "N(k)*p^k", "equal"]);
    for k in 0..=radius {
        let expected = counts[k] * p.pow(k as u32);
        let eq = rep.check(shells[k] == expected);
        t.push(vec![k.to_string(), shells[k].to_string(), counts[k].to_string(), expected.to_string(), yes(eq)]);
    }
    rep.tables.push(t);

    let adjacency_ok = (0..ball.len())
        .all(|i| ball.neighbors(i).iter().all(|&(_, j)| ball.distance(i).abs_diff(ball.distance(j)) <= 1));
    let faces_ok = ball.interior_faces().all(|e| e.chambers.len() == p as usize + 1);
    let labels_ok = ball.chambers().iter().all(|c| {
        let mut l: Vec<usize> = c.vertices().iter().map(|v| vertex_label(v, &ctx)).collect();
        l.sort();
        l == (0..n).collect::<Vec<_>>()
    });
    let mut checks = Table::new("checks", &["check", "passed"]);
    for (name, ok) in [("adjacent_distances", adjacency_ok), ("interior_faces_p+1", faces_ok), ("full_labels", labels_ok)] {
        rep.check(ok);
        checks.push(vec![name.into(), yes(ok)]);
    }
    rep.tables.push(checks);
    rep.notes.push(format!("shell counts: {}", list(&shells)));
    rep.detail = Some(serde_json::to_value(ball.to_json())?);
    Ok(rep)
}

fn alternating(sys: &Arc<CoxeterSystem>, s: usize, t: usize, m: u32, q: &Rational) -> anyhow::Result<HeckeElement> {
    let mut acc = HeckeElement::one(sys, q.clone());
    for i in 0..m {
        let g = if i % 2 == 0 { s } else { t };
        acc = multiply(&acc, &HeckeElement::generator(sys, g, q.clone())?)?;
    }
    Ok(acc)
}

pub fn hecke(label: AffineTypeLabel, q: Rational, max_len: usize) -> anyhow::Result<Report> {
    let mut rep = Report::new(
        "hecke",
        vec![("type", label.to_string()), ("q", to_text(&q)), ("K", max_len.to_string())],
    );
    let sys = Arc::new(CoxeterSystem::affine(label)?);
    let one = HeckeElement::one(&sys, q.clone());
    let rank = sys.rank();

    let mut r1 = 0;
    for s in 0..rank {
        let e = HeckeElement::generator(&sys, s, q.clone())?;
        let rhs = e.scale(&(&q - exact::int(1))).add(&one.scale(&q))?;
        r1 += usize::from(multiply(&e, &e)? == rhs);
    }

    let (mut r2_cases, mut r2) = (0, 0);
    for s in 0..rank {
        for t in s + 1..rank {
            if let Order::Finite(m) = sys.diagram().order(s, t) {
                r2_cases += 1;
                let lhs = alternating(&sys, s, t, m, &q)?;
                let rhs = alternating(&sys, t, s, m, &q)?;
                r2 += usize::from(lhs == rhs && lhs.support().len() == 1);
            }
        }
    }

    let elements = sys.ball(max_len);
    let basis: Vec<HeckeElement> = elements.iter().map(|w| steinberg::hecke::basis_element(&sys, w, q.clone())).collect();
    let (mut chi_cases, mut chi) = (0, 0);
    for a in &basis {
        for b in &basis {
            chi_cases += 1;
            let expected = special_character(a)? * special_character(b)?;
            chi += usize::from(special_character(&multiply(a, b)?)? == expected);
        }
    }

    let short: Vec<&HeckeElement> = basis.iter().take_while(|e| e.support().keys().all(|w| w.cached_length().unwrap_or(0) <= 1)).collect();
    let (mut assoc_cases, mut assoc) = (0, 0);
    for a in &short {
        for b in &short {
            for c in &short {
                assoc_cases += 1;
                let left = multiply(&multiply(a, b)?, c)?;
                let right = multiply(a, &multiply(b, c)?)?;
                assoc += usize::from(left == right);
            }
        }
    }

    let mut t = Table::new("checks", &["check", "cases", "passed"]);
    for (name, cases, passed) in [
        ("quadratic_relation", rank, r1),
        ("braid_relations", r2_cases, r2),
        ("character_multiplicative", chi_cases, chi),
        ("associativity", assoc_cases, assoc),
    ] {
        rep.check(cases == passed);
        t.push(vec![name.into(), cases.to_string(), passed.to_string()]);
    }
    rep.tables.push(t);
    rep.notes.push(format!("{} checks passed", if rep.ok { "all" } else { "not all" }));
    Ok(rep)
}

pub fn boundary(p: u64, depth: usize) -> anyhow::Result<Report> {
    if depth == 0 {
        bail!("boundary depth R must be at least 1");
    }
    let mut rep = Report::new("boundary", vec![("p", p.to_string()), ("R", depth.to_string())]);
    let ctx = PrimeContext::for_radius(p, 2, depth + 1)?;
    let o = LatticeClass::standard(&ctx);
    let ball = TreeBall::build(&o, depth, &ctx)?;

    let mut counts = Table::new("counts", &["quantity", "enumerated", "closed_form", "equal"]);
    let vertices = ball.len() as u64;
    let ends = ball.end_edges().len() as u64;
    let v_expected = sphere_vertex_count(p, depth as u32);
    let e_expected = end_count(p, depth as u32);
    let v_ok = rep.check(vertices == v_expected);
    let e_ok = rep.check(ends == e_expected);
    counts.push(vec!["vertices".into(), vertices.to_string(), v_expected.to_string(), yes(v_ok)]);
    counts.push(vec!["end_edges".into(), ends.to_string(), e_expected.to_string(), yes(e_ok)]);
    rep.tables.push(counts);

    // d of each vertex indicator strictly inside the sphere
    let inner: Vec<&LatticeClass> = ball
        .vertices()
        .iter()
        .filter(|v| ball.depth(v).is_some_and(|d| d < depth))
        .collect();
    let (mut constant, mut recovered) = (0, 0);
    for v in &inner {
        let f = ZeroCochain::new([((*v).clone(), exact::int(1))]);
        let df = coboundary(&f, &ctx)?;
        let bv = boundary_value(&df, &o, depth, &ctx)?;
        constant += usize::from(bv.constant_value() == Some(f.get(&o)));
        let h = kernel_preimage(&df, &o, depth, &ctx)?;
        recovered += usize::from(coboundary(&h, &ctx)? == df);
    }

    let mut round_trips = 0;
    for i in 0..ends as usize {
        let values: Vec<Rational> = (0..ends as usize).map(|j| exact::int(i64::from(i == j))).collect();
        let g = BoundaryFunction::from_values(&o, depth, &values, &ctx)?;
        let back = boundary_value(&lift(&g, &ctx)?, &o, depth, &ctx)?;
        round_trips += usize::from(back.differs_by_constant(&g));
    }

    let charts: Vec<ChartBall> = ball
        .end_edges()
        .iter()
        .map(|(t, s)| end_chart(t, s, &ctx))
        .collect::<Result<_, _>>()?;
    let mut disjoint = 0;
    let mut pairs = 0;
    for (i, a) in charts.iter().enumerate() {
        for b in &charts[i + 1..] {
            pairs += 1;
            disjoint += usize::from(!a.meets(b, p));
        }
    }

    let mut t = Table::new("checks", &["check", "cases", "passed"]);
    for (name, cases, passed) in [
        ("boundary_of_coboundary_constant", inner.len(), constant),
        ("kernel_preimage", inner.len(), recovered),
        ("lift_round_trip", ends as usize, round_trips),
        ("chart_disjoint_pairs", pairs, disjoint),
    ] {
        rep.check(cases == passed);
        t.push(vec![name.into(), cases.to_string(), passed.to_string()]);
    }
    rep.tables.push(t);
    rep.notes.push(format!("sphere S(o,{depth}): {vertices} vertices, {ends} end edges"));
    Ok(rep)
}
