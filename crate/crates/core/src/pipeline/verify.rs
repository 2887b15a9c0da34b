//! Re-checks a certificate from its line data alone.
//!
//! Nothing here calls the parametrized construction: polynomials are
//! re-derived by evaluating cross products at sample parameters, and the
//! incidence structure is regrouped from pairwise meets.

use std::collections::{BTreeMap, BTreeSet};

use super::{ArithmeticMode, Classification, Factorization, PairCertificate, StageRecord};
use crate::arrangement::{projectively_equivalent, tangent_dimension, Arrangement};
use crate::numberfield::{discriminant, Field, FieldElement, UniPoly};
use crate::projgeom::{add_triple, concurrent, cross, det3, incident, join, meet, scale_triple, ProjLine, ProjPoint, Triple};
use crate::splitting::Plinth;

/// Outcome of each named check, in the order run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub checks: Vec<(String, Result<(), String>)>,
}

impl Transcript {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.is_ok())
    }

    /// Name and reason of the first failed check.
    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.checks.iter().find_map(|(n, r)| r.as_ref().err().map(|e| (n.as_str(), e.as_str())))
    }

    fn record(&mut self, name: impl Into<String>, r: Result<(), String>) -> bool {
        let ok = r.is_ok();
        self.checks.push((name.into(), r));
        ok
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (n, r) in &self.checks {
            match r {
                Ok(()) => out.push_str(&format!("ok    {n}\n")),
                Err(e) => out.push_str(&format!("FAIL  {n}: {e}\n")),
            }
        }
        out
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Lines through each intersection point, regrouped from pairwise meets.
fn incidence_groups(lines: &[ProjLine]) -> Result<BTreeMap<ProjPoint, BTreeSet<usize>>, String> {
    let mut groups: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = meet(&lines[i], &lines[j]).map_err(|_| format!("lines {} and {} coincide", i + 1, j + 1))?;
            let g = groups.entry(p).or_default();
            g.insert(i);
            g.insert(j);
        }
    }
    Ok(groups)
}

fn point_sets(lines: &[ProjLine]) -> Result<BTreeSet<Vec<usize>>, String> {
    Ok(incidence_groups(lines)?
        .into_values()
        .map(|s| s.into_iter().collect())
        .collect())
}

fn pivot_coords(prefix: &[ProjLine], set: &[usize]) -> Result<ProjPoint, String> {
    meet(&prefix[set[0]], &prefix[set[1]]).map_err(|e| e.to_string())
}

fn check_plinth(prefix: &[ProjLine], psi: &Plinth) -> Result<(), String> {
    let n = prefix.len();
    let r = psi.support.len();
    ensure(r >= 3 && psi.pivots.len() == r, || format!("length {r} with {} pivots", psi.pivots.len()))?;
    let distinct: BTreeSet<_> = psi.support.iter().collect();
    ensure(distinct.len() == r, || "repeated support line".into())?;
    ensure(psi.support.iter().chain(psi.pivots.iter().flatten()).all(|&i| i < n), || {
        "line index out of range".into()
    })?;
    for (i, set) in psi.pivots.iter().enumerate() {
        ensure(set.len() >= 2 && set.windows(2).all(|w| w[0] < w[1]), || format!("pivot {} is malformed", i + 1))?;
        let p = pivot_coords(prefix, set)?;
        let through: Vec<usize> = (0..n).filter(|&k| incident(&p, &prefix[k])).collect();
        ensure(&through == set, || format!("pivot {} is not a full singular point", i + 1))?;
        for s in [psi.support[i], psi.support[(i + 1) % r]] {
            ensure(!incident(&p, &prefix[s]), || format!("pivot {} lies on support line {}", i + 1, s + 1))?;
        }
    }
    Ok(())
}

/// `det(S1, E1, Er)` at `lambda` from raw cross products, no normalization.
fn closing_value(prefix: &[ProjLine], psi: &Plinth, base: &Triple, dir: &Triple, lambda: &FieldElement) -> FieldElement {
    let r = psi.len();
    let mut q = add_triple(base, &scale_triple(dir, lambda));
    let mut first = None;
    let mut e = q.clone();
    for i in 0..r {
        let set = &psi.pivots[i];
        let p = cross(prefix[set[0]].coords(), prefix[set[1]].coords());
        e = cross(&q, &p);
        if i == 0 {
            first = Some(e.clone());
        }
        if i + 1 < r {
            q = cross(&e, prefix[psi.support[i + 1]].coords());
        }
    }
    det3(prefix[psi.support[0]].coords(), &first.expect("length is at least 3"), &e)
}

/// The quadratic through the values at `0`, `1`, `-1`.
fn interpolate(v0: &FieldElement, v1: &FieldElement, vm: &FieldElement, field: &Field) -> UniPoly {
    let half = FieldElement::from_rational(crate::numberfield::Rational::new(1, 2), field);
    let c1 = &(v1 - vm) * &half;
    let c2 = &(&(v1 + vm) * &half) - v0;
    UniPoly::new(vec![v0.clone(), c1, c2], field)
}

/// Quotient when `den` divides `num` exactly.
fn exact_quotient(num: &UniPoly, den: &UniPoly) -> Option<UniPoly> {
    let field = num.field().clone();
    let dd = den.degree()?;
    let lead = den.leading()?.clone();
    let mut rem: Vec<FieldElement> = num.coeffs().to_vec();
    if rem.len() < dd + 1 {
        return rem.iter().all(|c| c.is_zero()).then(|| UniPoly::zero(&field));
    }
    let mut quot = vec![FieldElement::zero(&field); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].checked_div(&lead).ok()?;
        for (j, d) in den.coeffs().iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&c * d);
        }
        quot[k] = c;
    }
    rem.iter().all(|c| c.is_zero()).then(|| UniPoly::new(quot, &field))
}

fn check_delta(prefix: &[ProjLine], st: &StageRecord, field: &Field) -> Result<(), String> {
    let psi = &st.plinth;
    let base = &st.delta.parametrization.base;
    let dir = &st.delta.parametrization.dir;
    let lift = |t: &Triple| -> Result<Triple, String> {
        let v: Vec<FieldElement> = t.iter().map(|c| c.embed(field).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        Ok([v[0].clone(), v[1].clone(), v[2].clone()])
    };
    let (base, dir) = (lift(base)?, lift(dir)?);
    let s1 = prefix[psi.support[0]].coords();
    ensure(
        crate::projgeom::dot(s1, &base).is_zero() && crate::projgeom::dot(s1, &dir).is_zero(),
        || "parametrization leaves the first support line".into(),
    )?;
    ensure(!crate::projgeom::is_zero_triple(&cross(&base, &dir)), || "parametrization is degenerate".into())?;
    let at = |k: i64| closing_value(prefix, psi, &base, &dir, &FieldElement::from_int(k, field));
    let raw = interpolate(&at(0), &at(1), &at(-1), field);
    let rec = st.delta.poly.embed(field).map_err(|e| e.to_string())?;
    ensure(rec.degree() == Some(2), || format!("recorded polynomial {rec} is not quadratic"))?;
    // raw has degree at most two, so a quadratic record leaves a constant
    let h = exact_quotient(&raw, &rec).ok_or_else(|| format!("recomputed {raw} is not a multiple of {rec}"))?;
    ensure(h.degree() == Some(0), || "recomputed polynomial vanishes identically".into())?;
    ensure(st.delta.excluded.is_empty(), || "a quadratic polynomial cannot have excluded values".into())
}

fn check_factorization(st: &StageRecord, field: &Field) -> Result<(), String> {
    let roots = st.factorization.roots();
    for r in roots {
        ensure(r.field() == field, || format!("root {r} is not in the certificate field"))?;
    }
    ensure(roots[0] != roots[1], || "roots coincide".into())?;
    let poly = st.delta.poly.embed(field).map_err(|e| e.to_string())?;
    for r in roots {
        ensure(poly.eval(r).is_zero(), || format!("{r} is not a root of {poly}"))?;
    }
    let ground = st.delta.poly.field();
    match &st.factorization {
        Factorization::Irreducible { discriminant_class, .. } => {
            ensure(ground.is_rational() && !field.is_rational(), || {
                "an irreducible stage must be over Q with a quadratic certificate field".into()
            })?;
            let disc = discriminant(&st.delta.poly);
            let q = disc.as_rational().ok_or("discriminant is not rational")?;
            ensure(q.sqrt().is_none(), || format!("discriminant {q} is a square"))?;
            ensure(q.squarefree_class().as_ref() == Some(discriminant_class), || {
                format!("discriminant {q} is not in class {discriminant_class}")
            })?;
            let fd = field.discriminant().and_then(|d| d.squarefree_class());
            ensure(fd.as_ref() == Some(discriminant_class), || {
                "certificate field does not adjoin the square root of the discriminant".into()
            })
        }
        Factorization::Split { .. } => ensure(ground == field, || "split stage is not over the certificate field".into()),
    }
}

/// Incidences of `e` against `prefix` for the plinth. Closure must hold
/// exactly when `closed`; everything not mandated must be a double point.
fn check_polygon(prefix: &[ProjLine], psi: &Plinth, e: &[ProjLine], closed: bool) -> Result<(), String> {
    let n = prefix.len();
    let r = psi.len();
    ensure(e.len() == r, || format!("{} lines for a plinth of length {r}", e.len()))?;
    let s = |i: usize| &prefix[psi.support[i % r]];
    for i in 0..r {
        let p = pivot_coords(prefix, &psi.pivots[i])?;
        ensure(incident(&p, &e[i]), || format!("E{} misses its pivot", i + 1))?;
    }
    for i in 0..r - 1 {
        ensure(concurrent(&e[i], &e[i + 1], s(i + 1)), || {
            format!("E{} and E{} do not meet on the support", i + 1, i + 2)
        })?;
    }
    ensure(concurrent(&e[r - 1], &e[0], s(0)) == closed, || {
        if closed {
            "polygon does not close".into()
        } else {
            "polygon closes".into()
        }
    })?;
    let all: Vec<ProjLine> = prefix.iter().chain(e).cloned().collect();
    for (pt, set) in incidence_groups(&all)? {
        let es: Vec<usize> = set.iter().filter(|&&k| k >= n).map(|k| k - n).collect();
        if es.is_empty() {
            continue;
        }
        let old: Vec<usize> = set.iter().copied().filter(|&k| k < n).collect();
        let ok = if old.len() >= 2 {
            let owners: Vec<usize> = (0..r).filter(|&i| psi.pivots[i] == old).collect();
            owners == es
        } else if es.len() == 1 {
            true
        } else if es.len() == 2 && old.is_empty() {
            !(es[1] == es[0] + 1 || (closed && es == [0, r - 1]))
        } else if es.len() == 2 && old.len() == 1 {
            let chain = es[1] == es[0] + 1 && old[0] == psi.support[es[1]];
            let closing = closed && es == [0, r - 1] && old[0] == psi.support[0];
            chain || closing
        } else {
            false
        };
        ensure(ok, || {
            let names: Vec<String> = set.iter().map(|&k| if k < n { format!("L{}", k + 1) } else { format!("E{}", k - n + 1) }).collect();
            format!("unexpected point {{{}}} at {:?}", names.join(", "), pt)
        })?;
    }
    Ok(())
}

fn check_parameter(st: &StageRecord, lambda: &FieldElement, first: &ProjLine, field: &Field) -> Result<(), String> {
    let t = |v: &Triple| -> Result<Vec<FieldElement>, String> {
        v.iter().map(|c| c.embed(field).map_err(|e| e.to_string())).collect()
    };
    let b = t(&st.delta.parametrization.base)?;
    let d = t(&st.delta.parametrization.dir)?;
    let q: Vec<FieldElement> = (0..3).map(|k| &b[k] + &(&d[k] * lambda)).collect();
    let q = ProjPoint::new([q[0].clone(), q[1].clone(), q[2].clone()]).map_err(|e| e.to_string())?;
    ensure(incident(&q, first), || format!("E1 misses the chain point at parameter {lambda}"))
}

fn extra_ok(prefix: &[ProjLine], l: &ProjLine) -> Result<(), String> {
    ensure(!prefix.contains(l), || "extra line already present".into())?;
    let groups = incidence_groups(prefix)?;
    let on: Vec<&ProjPoint> = groups.keys().filter(|p| incident(p, l)).collect();
    ensure(on.len() >= 2, || "extra line passes through fewer than two singular points".into())?;
    ensure(&join(on[0], on[1]).map_err(|e| e.to_string())? == l, || "extra line mismatch".into())
}

/// Re-validates every hypothesis the certificate claims.
pub fn verify_certificate(c: &PairCertificate) -> Transcript {
    let mut t = Transcript::default();
    let (f1, f2) = &c.final_pair;
    let field = f1.field().clone();
    if !t.record("fields", ensure(f2.field() == &field && (c.base.field().is_rational() || c.base.field() == &field), || "field mismatch".into())) {
        return t;
    }
    let l1: Vec<ProjLine> = f1.lines().to_vec();
    let l2: Vec<ProjLine> = f2.lines().to_vec();
    let base: Result<Vec<ProjLine>, String> = c.base.lines().iter().map(|l| l.embed(&field).map_err(|e| e.to_string())).collect();
    let base = match base {
        Ok(b) => b,
        Err(e) => {
            t.record("base", Err(e));
            return t;
        }
    };
    let n = base.len();
    if !t.record("base", ensure(l1.len() >= n && l2.len() >= n && l1[..n] == base[..] && l2[..n] == base[..], || "final arrangements do not start with the base".into())) {
        return t;
    }
    if !t.record("chain", ensure(!c.plinth_chain.is_empty() && (c.branch == 1 || c.branch == 2), || "empty chain or bad branch".into())) {
        return t;
    }

    let mut pos = n;
    let mut extras = Vec::new();
    let last = c.plinth_chain.len() - 1;
    for (k, st) in c.plinth_chain.iter().enumerate() {
        let name = |what: &str| format!("stage {} {what}", k + 1);
        let r = st.plinth.len();
        let end = st.on_lines + r;
        let layout = ensure(st.on_lines >= pos && end <= l1.len() && end <= l2.len(), || "lines out of range".into())
            .and_then(|_| ensure(l1[..st.on_lines] == l2[..st.on_lines], || "final arrangements differ before the last polygon".into()));
        if !t.record(name("layout"), layout) {
            return t;
        }
        let mut ex = Ok(());
        for j in pos..st.on_lines {
            ex = ex.and_then(|_| extra_ok(&l1[..j], &l1[j]));
            extras.push(l1[j].clone());
        }
        t.record(name("extra lines"), ex);
        let prefix = &l1[..st.on_lines];
        let plinth_ok = t.record(name("plinth"), check_plinth(prefix, &st.plinth));
        if plinth_ok {
            t.record(name("polynomial"), check_delta(prefix, st, &field));
        }
        t.record(name("factorization"), check_factorization(st, &field));
        let tails: [&[ProjLine]; 2] = if k == last {
            [&l1[st.on_lines..], &l2[st.on_lines..]]
        } else {
            [&l1[st.on_lines..end], &l1[st.on_lines..end]]
        };
        for j in 0..2 {
            let p = &st.polygons[j];
            let mut res = ensure(p.lines.iter().all(|l| l.field() == &field), || "polygon outside the certificate field".into())
                .and_then(|_| ensure(p.lambda == st.factorization.roots()[j], || "polygon parameter is not the recorded root".into()))
                .and_then(|_| ensure(p.plinth == st.plinth, || "polygon plinth differs".into()));
            if plinth_ok {
                res = res
                    .and_then(|_| check_polygon(prefix, &st.plinth, &p.lines, true))
                    .and_then(|_| check_parameter(st, &p.lambda, &p.lines[0], &field));
            }
            let placed = k == last || j + 1 == c.branch;
            if placed {
                let tail = if k == last { tails[j] } else { tails[0] };
                res = res.and_then(|_| ensure(tail == &p.lines[..], || "polygon lines differ from the arrangement".into()));
            }
            t.record(format!("stage {} polygon {} splitting", k + 1, j + 1), res);
        }
        if k == last {
            t.record(name("distinct polygons"), ensure(
                st.polygons[0].lines.iter().collect::<BTreeSet<_>>() != st.polygons[1].lines.iter().collect::<BTreeSet<_>>(),
                || "both polygons have the same lines".into(),
            ));
            let w = &c.nonsplitting_witness;
            let mut res = ensure(w.plinth == st.plinth, || "witness is on another plinth".into())
                .and_then(|_| ensure(!st.delta.poly.embed(&field).map(|p| p.eval(&w.lambda).is_zero()).unwrap_or(true), || "witness parameter is a root".into()));
            if plinth_ok {
                res = res
                    .and_then(|_| check_polygon(prefix, &st.plinth, &w.lines, false))
                    .and_then(|_| check_parameter(st, &w.lambda, &w.lines[0], &field));
            }
            t.record("nonsplitting witness", res);
        }
        pos = end;
    }
    t.record("extra line list", ensure(extras == c.extra_lines, || "recorded extra lines differ".into()));

    let combos = point_sets(&l1).and_then(|a| point_sets(&l2).map(|b| (a, b)));
    t.record("labeled combinatorics", combos.and_then(|(a, b)| ensure(a == b, || "final combinatorics differ".into())));

    let stage_arr = |name: &str| -> Option<Arrangement> {
        let lines = match name {
            "base" => c.base.lines().to_vec(),
            "first stage" if c.plinth_chain.len() > 1 => {
                let st = &c.plinth_chain[0];
                l1[..st.on_lines + st.plinth.len()].to_vec()
            }
            "intermediate" => l1[..c.plinth_chain[last].on_lines].to_vec(),
            "final 1" => l1.clone(),
            "final 2" => l2.clone(),
            _ => return None,
        };
        let f = lines.first()?.field().clone();
        Arrangement::new(&f, lines, None).ok()
    };
    let names: Vec<&str> = c.rigidity.iter().map(|r| r.stage.as_str()).collect();
    let mut rig = ensure(names.first() == Some(&"base") && names.contains(&"intermediate"), || "rigidity record incomplete".into());
    for rec in &c.rigidity {
        rig = rig.and_then(|_| {
            let a = stage_arr(&rec.stage).ok_or_else(|| format!("unknown stage {}", rec.stage))?;
            let d = tangent_dimension(&a).map_err(|e| e.to_string())?;
            ensure(d == rec.dimension && a.len() == rec.lines, || format!("{}: tangent dimension {d}, recorded {}", rec.stage, rec.dimension))
        });
    }
    if let Some(b) = c.rigidity.first() {
        rig = rig.and_then(|_| ensure(b.dimension == 0, || "base is not rigid".into()));
    }
    t.record("rigidity", rig);

    let conj = |ls: &[ProjLine]| -> BTreeSet<ProjLine> { ls.iter().map(|l| l.conjugate()).collect() };
    let s1: BTreeSet<ProjLine> = l1.iter().cloned().collect();
    let s2: BTreeSet<ProjLine> = l2.iter().cloned().collect();
    let literal = s1 == s2 || (!field.is_rational() && conj(&l1) == s2);
    let pgl = match (Arrangement::new(&field, l1.clone(), None), Arrangement::new(&field, l2.clone(), None)) {
        (Ok(a1), Ok(a2)) => {
            projectively_equivalent(&a1, &a2).is_some()
                || (!field.is_rational()
                    && Arrangement::new(&field, l1.iter().map(|l| l.conjugate()).collect(), None)
                        .map(|a| projectively_equivalent(&a, &a2).is_some())
                        .unwrap_or(false))
        }
        _ => false,
    };
    let decisive = match c.arithmetic.mode {
        ArithmeticMode::Literal => literal,
        ArithmeticMode::UpToPgl => pgl,
    };
    let expected = if field.is_rational() {
        Classification::Rational
    } else if decisive {
        Classification::Arithmetic
    } else {
        Classification::Nonarithmetic
    };
    let galois = ensure(literal == c.arithmetic.literal && pgl == c.arithmetic.up_to_pgl, || "recorded Galois verdicts differ".into())
        .and_then(|_| ensure(expected == c.classification, || format!("classification should be {}", expected.name())))
        .and_then(|_| {
            ensure(
                c.classification != Classification::Rational || c.plinth_chain.iter().all(|s| s.delta.poly.field().is_rational()),
                || "rational certificate mentions a quadratic field".into(),
            )
        });
    t.record("galois classification", galois);
    t
}
