//! Machine-integer sweep over all plinths of an arrangement.
//!
//! Coordinates are scaled into `Z[t]`, `t = D w` with `D` clearing the
//! denominators of the defining polynomial, so every operation of the
//! construction is an integer polynomial identity. All arithmetic is
//! checked; any overflow or removable-content case falls back to the exact
//! path for that plinth. Pair candidates found here are always re-derived
//! exactly before being reported.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::delta::{delta_polynomial, pivot_point, Parametrization};
use super::plinth::{check_length, pivot_candidates, support_is_concurrent, support_tuples, ConventionOptions, Plinth};
use super::polygon::{splitting_from_delta, Polygon, SplittingOutcome};
use super::{DeltaPolynomial, SplittingError};
use crate::arrangement::{combinatorics, Arrangement, Combinatorics};
use crate::numberfield::{solve_quadratic, sqrt_in_field, Field, FieldElement, QuadraticSolution, Rational};
use crate::projgeom::Triple;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Z {
    a: i128,
    b: i128,
}

type T3 = [Z; 3];

const ZERO: Z = Z { a: 0, b: 0 };

/// `Z[t]` with `t^2 + e1 t + e0 = 0`.
#[derive(Clone, Debug)]
struct Ring {
    e0: i128,
    e1: i128,
    scale: BigInt,
}

impl Ring {
    fn new(field: &Field) -> Option<Ring> {
        match field.min_poly() {
            None => Some(Ring {
                e0: 0,
                e1: 0,
                scale: BigInt::one(),
            }),
            Some((c0, c1)) => {
                let d = c0.denom().lcm(c1.denom());
                let e1 = c1.numer() * (&d / c1.denom());
                let e0 = c0.numer() * (&d * &d / c0.denom());
                Some(Ring {
                    e0: e0.to_i128()?,
                    e1: e1.to_i128()?,
                    scale: d,
                })
            }
        }
    }

    #[inline]
    fn mul(&self, x: Z, y: Z) -> Option<Z> {
        if x.b == 0 && y.b == 0 {
            return Some(Z {
                a: x.a.checked_mul(y.a)?,
                b: 0,
            });
        }
        let bd = x.b.checked_mul(y.b)?;
        let a = x.a.checked_mul(y.a)?.checked_sub(self.e0.checked_mul(bd)?)?;
        let b = x
            .a
            .checked_mul(y.b)?
            .checked_add(x.b.checked_mul(y.a)?)?
            .checked_sub(self.e1.checked_mul(bd)?)?;
        Some(Z { a, b })
    }

    #[inline]
    fn mul_sub(&self, x: Z, y: Z, u: Z, v: Z) -> Option<Z> {
        sub(self.mul(x, y)?, self.mul(u, v)?)
    }

    fn cross(&self, p: &T3, q: &T3) -> Option<T3> {
        Some([
            self.mul_sub(p[1], q[2], p[2], q[1])?,
            self.mul_sub(p[2], q[0], p[0], q[2])?,
            self.mul_sub(p[0], q[1], p[1], q[0])?,
        ])
    }

    fn dot(&self, p: &T3, q: &T3) -> Option<Z> {
        add(add(self.mul(p[0], q[0])?, self.mul(p[1], q[1])?)?, self.mul(p[2], q[2])?)
    }

    fn scale3(&self, k: Z, p: &T3) -> Option<T3> {
        Some([self.mul(k, p[0])?, self.mul(k, p[1])?, self.mul(k, p[2])?])
    }

    /// `N(x) = a^2 - e1 a b + e0 b^2`.
    fn norm(&self, x: Z) -> Option<i128> {
        x.a.checked_mul(x.a)?
            .checked_sub(self.e1.checked_mul(x.a)?.checked_mul(x.b)?)?
            .checked_add(self.e0.checked_mul(x.b)?.checked_mul(x.b)?)
    }

    /// `(s, m)` with `(s / m)^2 = x`, by integer arithmetic alone.
    ///
    /// Writing `x = X + Y r` with `r^2 = e1^2 - 4 e0`, a root `a + b r`
    /// has `4 a^2 = 2X +- 2 sqrt(N(x))`; every candidate is checked by
    /// squaring, so `None` only means the exact path must decide.
    fn sqrt(&self, x: Z) -> Option<(Z, i128)> {
        if x.b == 0 {
            if let Some(r) = isqrt_exact(x.a) {
                return Some((Z { a: r, b: 0 }, 1));
            }
        }
        if self.e0 == 0 && self.e1 == 0 {
            return None;
        }
        let n = isqrt_exact(self.norm(x)?)?;
        let twice_x = x.a.checked_mul(2)?.checked_sub(x.b.checked_mul(self.e1)?)?;
        for sign in [1i128, -1] {
            let big_m = twice_x.checked_add(n.checked_mul(2 * sign)?)?;
            let Some(r) = isqrt_exact(big_m) else { continue };
            if r == 0 {
                continue;
            }
            // s / m = (M + B e1 + 2 B t) / (2 r)
            let s = Z {
                a: big_m.checked_add(x.b.checked_mul(self.e1)?)?,
                b: x.b.checked_mul(2)?,
            };
            let m = r.checked_mul(2)?;
            let m2 = m.checked_mul(m)?;
            let want = Z {
                a: x.a.checked_mul(m2)?,
                b: x.b.checked_mul(m2)?,
            };
            if self.mul(s, s)? == want {
                return Some((s, m));
            }
        }
        None
    }

    fn to_field(&self, x: Z, field: &Field) -> FieldElement {
        if field.is_rational() {
            return FieldElement::from_rational(Rational::from_integer(x.a), field);
        }
        let a0 = Rational::from_integer(x.a);
        let a1 = Rational::from_integer(BigInt::from(x.b) * &self.scale);
        FieldElement::new(a0, a1, field).expect("quadratic field")
    }

    /// `x = (p + q t) / m` with integers; returns `(p + q t, m)`.
    fn from_field(&self, x: &FieldElement) -> Option<(Z, i128)> {
        let a0 = x.a0().clone();
        let a1 = x.a1() / &Rational::from_integer(self.scale.clone());
        let m = a0.denom().lcm(a1.denom());
        let p = a0.numer() * (&m / a0.denom());
        let q = a1.numer() * (&m / a1.denom());
        Some((
            Z {
                a: p.to_i128()?,
                b: q.to_i128()?,
            },
            m.to_i128()?,
        ))
    }

    fn triple(&self, t: &Triple) -> Option<T3> {
        Some(self.triples(&[t])?[0])
    }

    /// Converts several triples with one common integer multiplier.
    fn triples(&self, ts: &[&Triple]) -> Option<Vec<T3>> {
        let d = Rational::from_integer(self.scale.clone());
        let parts: Vec<(Rational, Rational)> = ts
            .iter()
            .flat_map(|t| t.iter())
            .map(|x| (x.a0().clone(), x.a1() / &d))
            .collect();
        let mut m = BigInt::one();
        for (a, b) in &parts {
            m = m.lcm(a.denom()).lcm(b.denom());
        }
        let conv = |r: &Rational| (r.numer() * (&m / r.denom())).to_i128();
        let mut out = Vec::with_capacity(ts.len());
        for chunk in parts.chunks(3) {
            let mut t = [ZERO; 3];
            for (k, (a, b)) in chunk.iter().enumerate() {
                t[k] = Z {
                    a: conv(a)?,
                    b: conv(b)?,
                };
            }
            out.push(t);
        }
        Some(out)
    }
}

#[inline]
fn add(x: Z, y: Z) -> Option<Z> {
    Some(Z {
        a: x.a.checked_add(y.a)?,
        b: x.b.checked_add(y.b)?,
    })
}

#[inline]
fn sub(x: Z, y: Z) -> Option<Z> {
    Some(Z {
        a: x.a.checked_sub(y.a)?,
        b: x.b.checked_sub(y.b)?,
    })
}

fn is_zero3(p: &T3) -> bool {
    p.iter().all(|z| *z == ZERO)
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

const REDUCE_ABOVE: i128 = 1 << 40;

/// Divides a family by the integer content of all its entries once they
/// grow large. The common factor does not change the parameter.
fn reduce_family(f: &mut [T3; 2]) {
    let big = f
        .iter()
        .flatten()
        .any(|z| z.a.abs() > REDUCE_ABOVE || z.b.abs() > REDUCE_ABOVE);
    if !big {
        return;
    }
    let mut g = 0i128;
    for z in f.iter().flatten() {
        g = gcd_i128(g, z.a);
        g = gcd_i128(g, z.b);
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for z in f.iter_mut().flatten() {
            z.a /= g;
            z.b /= g;
        }
    }
}

fn isqrt_exact(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// What the sweep should collect besides counts.
#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub length: usize,
    pub convention: ConventionOptions,
    pub collect_irreducible: bool,
    pub collect_reducible: bool,
    pub find_pairs: bool,
    /// Skip the integer kernel and run every plinth through the exact path.
    pub exact_only: bool,
    /// Restrict to plinths whose support or pivots use this line.
    pub involve_line: Option<usize>,
}

impl SweepOptions {
    pub fn new(length: usize, convention: ConventionOptions) -> Self {
        SweepOptions {
            length,
            convention,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub plinths: usize,
    pub low_degree: usize,
    pub irreducible: usize,
    pub double_root: usize,
    pub reducible: usize,
    pub pairs: usize,
    pub exact_fallbacks: usize,
}

impl SweepStats {
    fn merge(&mut self, o: &SweepStats) {
        self.plinths += o.plinths;
        self.low_degree += o.low_degree;
        self.irreducible += o.irreducible;
        self.double_root += o.double_root;
        self.reducible += o.reducible;
        self.pairs += o.pairs;
        self.exact_fallbacks += o.exact_fallbacks;
    }
}

#[derive(Debug, Clone)]
pub struct PairHit {
    pub plinth: Plinth,
    pub delta: DeltaPolynomial,
    pub first: Polygon,
    pub second: Polygon,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub stats: SweepStats,
    pub irreducible: Vec<Plinth>,
    pub reducible: Vec<Plinth>,
    pub pairs: Vec<PairHit>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Low,
    Irreducible,
    DoubleRoot,
    /// Distinct roots; the flag says whether both polygons may split.
    Reducible(bool),
}

struct Ctx<'a> {
    a: &'a Arrangement,
    c: &'a Combinatorics,
    ring: Option<Ring>,
    lines: Vec<T3>,
    points: Vec<Option<T3>>,
    opts: &'a SweepOptions,
}

/// Runs the construction on every plinth of `a` of the requested length.
/// Output order is the enumeration order and does not depend on the
/// thread pool.
pub fn sweep(a: &Arrangement, opts: &SweepOptions) -> Result<SweepReport, SplittingError> {
    let c = combinatorics(a);
    check_length(&c, opts.length)?;
    let ring = if opts.exact_only { None } else { Ring::new(a.field()) };
    let lines: Vec<T3> = match &ring {
        Some(r) => a.lines().iter().map(|l| r.triple(l.coords())).collect::<Option<_>>().unwrap_or_default(),
        None => Vec::new(),
    };
    let ring = if lines.len() == a.len() { ring } else { None };
    let points = c
        .points()
        .iter()
        .map(|p| {
            let r = ring.as_ref()?;
            let e = pivot_point(a, p).ok()?;
            r.triple(e.coords())
        })
        .collect();
    let ctx = Ctx {
        a,
        c: &c,
        ring,
        lines,
        points,
        opts,
    };
    let supports: Vec<Vec<usize>> = support_tuples(c.n_lines(), opts.length, opts.convention.quotient)
        .into_iter()
        .filter(|s| !(opts.convention.skip_concurrent_supports && support_is_concurrent(&c, s)))
        .collect();
    let parts: Vec<Result<SweepReport, SplittingError>> = supports.par_iter().map(|s| ctx.support(s)).collect();
    let mut out = SweepReport::default();
    for p in parts {
        let p = p?;
        out.stats.merge(&p.stats);
        out.irreducible.extend(p.irreducible);
        out.reducible.extend(p.reducible);
        out.pairs.extend(p.pairs);
    }
    Ok(out)
}

struct Frame {
    /// `Q_i` as `[base, dir]`.
    q: [T3; 2],
}

impl Ctx<'_> {
    fn support(&self, s: &[usize]) -> Result<SweepReport, SplittingError> {
        let mut rep = SweepReport::default();
        let cands = pivot_candidates(self.c, s);
        let q1 = match &self.ring {
            Some(ring) => {
                let p = Parametrization::canonical(self.a.line(s[0]), self.a.line(s[1]))?;
                joint(ring, &p.base, &p.dir)
            }
            None => None,
        };
        let s_lines: Vec<Option<&T3>> = s.iter().map(|&i| self.lines.get(i)).collect();
        let mut chosen = Vec::with_capacity(s.len());
        let mut trace: Vec<[T3; 2]> = Vec::with_capacity(s.len());
        let mut frames = vec![Frame { q: q1.unwrap_or([[ZERO; 3]; 2]) }];
        let kernel_ok = q1.is_some() && s_lines.iter().all(|l| l.is_some());
        self.walk(s, &cands, &mut chosen, &mut trace, &mut frames, kernel_ok, &mut rep)?;
        Ok(rep)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        s: &[usize],
        cands: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        trace: &mut Vec<[T3; 2]>,
        frames: &mut Vec<Frame>,
        kernel_ok: bool,
        rep: &mut SweepReport,
    ) -> Result<(), SplittingError> {
        let i = chosen.len();
        let r = s.len();
        for &k in &cands[i] {
            if self.opts.convention.pivots_distinct && chosen.contains(&k) {
                continue;
            }
            chosen.push(k);
            let mut ok = kernel_ok;
            let mut fam = [[ZERO; 3]; 2];
            if ok {
                match self.step_e(&frames[i].q, k) {
                    Some(f) => fam = f,
                    None => ok = false,
                }
            }
            if i + 1 == r {
                if !self.involves(s, chosen) {
                    chosen.pop();
                    continue;
                }
                let class = if ok { self.leaf(s, chosen, trace, &fam) } else { None };
                self.record(s, chosen, class, rep)?;
            } else {
                let mut next_ok = ok;
                let mut next = Frame { q: [[ZERO; 3]; 2] };
                if ok {
                    match self.step_q(&fam, s[i + 1]) {
                        Some(q) => next.q = q,
                        None => next_ok = false,
                    }
                }
                trace.push(fam);
                frames.push(next);
                self.walk(s, cands, chosen, trace, frames, next_ok, rep)?;
                frames.pop();
                trace.pop();
            }
            chosen.pop();
        }
        Ok(())
    }

    fn involves(&self, s: &[usize], chosen: &[usize]) -> bool {
        match self.opts.involve_line {
            None => true,
            Some(m) => s.contains(&m) || chosen.iter().any(|&k| self.c.points()[k].contains(&m)),
        }
    }

    /// `E = Q x P`, rejecting removable content.
    fn step_e(&self, q: &[T3; 2], k: usize) -> Option<[T3; 2]> {
        let ring = self.ring.as_ref()?;
        let p = self.points[k].as_ref()?;
        let mut f = [ring.cross(&q[0], p)?, ring.cross(&q[1], p)?];
        reduce_family(&mut f);
        Some(f)
    }

    fn step_q(&self, e: &[T3; 2], line: usize) -> Option<[T3; 2]> {
        let ring = self.ring.as_ref()?;
        if is_zero3(&ring.cross(&e[0], &e[1])?) {
            return None;
        }
        let l = &self.lines[line];
        let mut f = [ring.cross(&e[0], l)?, ring.cross(&e[1], l)?];
        if is_zero3(&ring.cross(&f[0], &f[1])?) {
            return None;
        }
        reduce_family(&mut f);
        Some(f)
    }

    /// Classifies a plinth from its integer trace; `None` defers to the
    /// exact path.
    fn leaf(&self, s: &[usize], chosen: &[usize], trace: &[[T3; 2]], er: &[T3; 2]) -> Option<Class> {
        let ring = self.ring.as_ref()?;
        let e1 = trace.first().unwrap_or(er);
        let s1 = &self.lines[s[0]];
        let u = ring.cross(s1, &e1[0])?;
        let v = ring.cross(s1, &e1[1])?;
        let c0 = ring.dot(&u, &er[0])?;
        let c1 = add(ring.dot(&u, &er[1])?, ring.dot(&v, &er[0])?)?;
        let c2 = ring.dot(&v, &er[1])?;
        if c2 == ZERO {
            return Some(Class::Low);
        }
        let disc = sub(ring.mul(c1, c1)?, ring.mul(Z { a: 4, b: 0 }, ring.mul(c0, c2)?)?)?;
        // an end family with content hides a removable factor
        let content = is_zero3(&ring.cross(&er[0], &er[1])?);
        if disc == ZERO {
            return (!content).then_some(Class::DoubleRoot);
        }
        let field = self.a.field();
        let square = if field.is_rational() {
            isqrt_exact(disc.a).map(|_| ())
        } else {
            isqrt_exact(ring.norm(disc)?).map(|_| ())
        };
        if square.is_none() {
            return Some(Class::Irreducible);
        }
        if content {
            return None;
        }
        let (sq, m) = match ring.sqrt(disc) {
            Some(r) => r,
            None => {
                let Some(root) = sqrt_in_field(&ring.to_field(disc, field)) else {
                    return Some(Class::Irreducible);
                };
                ring.from_field(&root)?
            }
        };
        if !self.opts.find_pairs {
            return Some(Class::Reducible(false));
        }
        let mut all: Vec<&[T3; 2]> = trace.iter().collect();
        all.push(er);
        let mut ok = true;
        for sign in [1i128, -1] {
            // lambda = (-c1 m + sign sq) / (2 c2 m)
            let den = ring.mul(c2, Z { a: 2 * m, b: 0 })?;
            let num = add(ring.mul(c1, Z { a: -m, b: 0 })?, Z {
                a: sign * sq.a,
                b: sign * sq.b,
            })?;
            let mut es = Vec::with_capacity(all.len());
            for f in &all {
                let t = ring.scale3(den, &f[0])?;
                let d = ring.scale3(num, &f[1])?;
                es.push([add(t[0], d[0])?, add(t[1], d[1])?, add(t[2], d[2])?]);
            }
            if !self.generic(s, chosen, &es)? {
                ok = false;
                break;
            }
        }
        Some(Class::Reducible(ok))
    }

    /// Necessary conditions for a splitting polygon, exact over the integers.
    fn generic(&self, s: &[usize], chosen: &[usize], es: &[T3]) -> Option<bool> {
        let ring = self.ring.as_ref()?;
        let r = es.len();
        let n = self.lines.len();
        for (i, e) in es.iter().enumerate() {
            if is_zero3(e) {
                return Some(false);
            }
            for l in &self.lines {
                if is_zero3(&ring.cross(e, l)?) {
                    return Some(false);
                }
            }
            for f in &es[..i] {
                if is_zero3(&ring.cross(e, f)?) {
                    return Some(false);
                }
            }
            for (k, p) in self.points.iter().enumerate() {
                let on = ring.dot(e, p.as_ref()?)? == ZERO;
                if on != (chosen[i] == k) {
                    return Some(false);
                }
            }
        }
        for i in 0..r {
            let piv = &self.c.points()[chosen[i]];
            for m in 0..n {
                if piv.binary_search(&m).is_ok() {
                    continue;
                }
                let x = ring.cross(&es[i], &self.lines[m])?;
                for j in 0..r {
                    if j == i || ring.dot(&es[j], &x)? != ZERO {
                        continue;
                    }
                    let mandated = (m == s[i] && j == (i + r - 1) % r) || (m == s[(i + 1) % r] && j == (i + 1) % r);
                    if !mandated {
                        return Some(false);
                    }
                }
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                let x = ring.cross(&es[i], &es[j])?;
                for e in &es[j + 1..] {
                    if ring.dot(e, &x)? == ZERO {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    fn record(
        &self,
        s: &[usize],
        chosen: &[usize],
        class: Option<Class>,
        rep: &mut SweepReport,
    ) -> Result<(), SplittingError> {
        rep.stats.plinths += 1;
        let plinth = || Plinth {
            support: s.to_vec(),
            pivots: chosen.iter().map(|&k| self.c.points()[k].clone()).collect(),
        };
        let class = match class {
            Some(c) => c,
            None => {
                rep.stats.exact_fallbacks += 1;
                self.exact_class(&plinth())?
            }
        };
        match class {
            Class::Low => rep.stats.low_degree += 1,
            Class::DoubleRoot => rep.stats.double_root += 1,
            Class::Irreducible => {
                rep.stats.irreducible += 1;
                if self.opts.collect_irreducible {
                    rep.irreducible.push(plinth());
                }
            }
            Class::Reducible(candidate) => {
                rep.stats.reducible += 1;
                let psi = plinth();
                if self.opts.collect_reducible {
                    rep.reducible.push(psi.clone());
                }
                if candidate {
                    let d = delta_polynomial(self.a, &psi)?;
                    if let SplittingOutcome::Pairs { delta, first, second } = splitting_from_delta(self.a, &psi, d) {
                        rep.stats.pairs += 1;
                        rep.pairs.push(PairHit {
                            plinth: psi,
                            delta,
                            first,
                            second,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn exact_class(&self, psi: &Plinth) -> Result<Class, SplittingError> {
        let d = delta_polynomial(self.a, psi)?;
        Ok(match solve_quadratic(&d.poly)? {
            QuadraticSolution::LinearOrConstant(_) => Class::Low,
            QuadraticSolution::Irreducible { .. } => Class::Irreducible,
            QuadraticSolution::Roots(x, y) if x == y => Class::DoubleRoot,
            QuadraticSolution::Roots(_, _) => Class::Reducible(self.opts.find_pairs),
        })
    }
}

fn joint(ring: &Ring, base: &Triple, dir: &Triple) -> Option<[T3; 2]> {
    let v = ring.triples(&[base, dir])?;
    Some([v[0], v[1]])
}

/// Exact coefficients of the kernel's polynomial for one plinth, for
/// cross-checking against [`delta_polynomial`].
pub fn kernel_delta(a: &Arrangement, psi: &Plinth) -> Option<[FieldElement; 3]> {
    let ring = Ring::new(a.field())?;
    let lines: Vec<T3> = a.lines().iter().map(|l| ring.triple(l.coords())).collect::<Option<_>>()?;
    let p = Parametrization::canonical(a.line(psi.support[0]), a.line(psi.support[1])).ok()?;
    let mut q = joint(&ring, &p.base, &p.dir)?;
    let r = psi.len();
    let mut trace = Vec::new();
    for i in 0..r {
        let piv = ring.triple(pivot_point(a, &psi.pivots[i]).ok()?.coords())?;
        let e = [ring.cross(&q[0], &piv)?, ring.cross(&q[1], &piv)?];
        if i + 1 < r {
            let l = &lines[psi.support[i + 1]];
            q = [ring.cross(&e[0], l)?, ring.cross(&e[1], l)?];
        }
        trace.push(e);
    }
    let s1 = &lines[psi.support[0]];
    let (e1, er) = (&trace[0], &trace[r - 1]);
    let u = ring.cross(s1, &e1[0])?;
    let v = ring.cross(s1, &e1[1])?;
    let c0 = ring.dot(&u, &er[0])?;
    let c1 = add(ring.dot(&u, &er[1])?, ring.dot(&v, &er[0])?)?;
    let c2 = ring.dot(&v, &er[1])?;
    let f = a.field();
    Some([c0, c1, c2].map(|z| ring.to_field(z, f)))
}
