use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PairCertificate, StageRecord};
use crate::arrangement::Arrangement;
use crate::numberfield::Rational;
use crate::projgeom::ProjLine;

/// Integer multiple of a rational number list with coprime entries.
fn primitive(qs: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for q in qs {
        l = l.lcm(q.denom());
    }
    let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn render_quadratic(a0: &BigInt, a1: &BigInt, symbol: &str) -> String {
    let w = if a1.is_one() {
        symbol.to_string()
    } else if (-a1).is_one() {
        format!("-{symbol}")
    } else {
        format!("{a1}{symbol}")
    };
    if a0.is_zero() {
        w
    } else if a1.is_negative() {
        format!("{a0} - {}", w.trim_start_matches('-'))
    } else {
        format!("{a0} + {w}")
    }
}

/// The line as an equation with coprime integer coefficients, e.g.
/// `3x + 2y - 3z = 0`; irrational coefficients are written in `symbol`.
pub fn render_line(l: &ProjLine, symbol: &str) -> String {
    let c = l.coords();
    let parts: Vec<Rational> = c.iter().flat_map(|e| [e.a0().clone(), e.a1().clone()]).collect();
    let ints = primitive(&parts);
    let mut out = String::new();
    for (k, var) in ["x", "y", "z"].into_iter().enumerate() {
        let (a0, a1) = (&ints[2 * k], &ints[2 * k + 1]);
        if a0.is_zero() && a1.is_zero() {
            continue;
        }
        let (neg, coeff) = if a1.is_zero() {
            let m = a0.abs();
            (a0.is_negative(), if m.is_one() { String::new() } else { m.to_string() })
        } else if a0.is_zero() {
            let m = a1.abs();
            let w = if m.is_one() { symbol.to_string() } else { format!("{m}{symbol}") };
            (a1.is_negative(), w)
        } else {
            (false, format!("({})", render_quadratic(a0, a1, symbol)))
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&coeff);
        out.push_str(var);
    }
    out.push_str(" = 0");
    out
}

fn lines_block(out: &mut String, a: &Arrangement, range: std::ops::Range<usize>, symbol: &str) {
    for i in range {
        let _ = writeln!(out, "    {}: {}", a.label(i), render_line(a.line(i), symbol));
    }
}

fn stage_block(out: &mut String, k: usize, st: &StageRecord, a: &Arrangement, symbol: &str) {
    let support: Vec<String> = st.plinth.support.iter().map(|&i| a.label(i)).collect();
    let pivots: Vec<String> = st
        .plinth
        .pivots
        .iter()
        .map(|p| p.iter().map(|&i| a.label(i)).collect::<Vec<_>>().join("."))
        .collect();
    let _ = writeln!(out, "  stage {k} on {} lines", st.on_lines);
    let _ = writeln!(out, "    support  {}", support.join(", "));
    let _ = writeln!(out, "    pivots   {}", pivots.join(", "));
    let _ = writeln!(out, "    delta    {}", st.delta.poly.render("t", symbol));
    let extra = match &st.factorization {
        super::Factorization::Irreducible { discriminant_class, .. } => {
            format!(", discriminant class {discriminant_class}")
        }
        super::Factorization::Split { .. } => String::new(),
    };
    let _ = writeln!(out, "    factors  {}{extra}", st.factorization.name());
    let [r1, r2] = st.factorization.roots();
    let _ = writeln!(out, "    roots    {}, {}", r1.render(symbol), r2.render(symbol));
}

/// Plain-text summary listing every equation.
pub fn render_certificate(c: &PairCertificate, symbol: &str) -> String {
    let mut out = String::new();
    let (f1, f2) = &c.final_pair;
    let _ = writeln!(out, "{} pair over {}", c.classification.name(), c.field());
    let n = c.base.len();
    let _ = writeln!(out, "  base ({n} lines)");
    lines_block(&mut out, f1, 0..n, symbol);
    let last = c.plinth_chain.len();
    let mut start = n;
    for (k, st) in c.plinth_chain.iter().enumerate() {
        if st.on_lines > start {
            let _ = writeln!(out, "  extra lines");
            lines_block(&mut out, f1, start..st.on_lines, symbol);
        }
        stage_block(&mut out, k + 1, st, f1, symbol);
        let r = st.plinth.len();
        if k + 1 < last {
            let _ = writeln!(out, "    kept polygon {}", c.branch);
            lines_block(&mut out, f1, st.on_lines..st.on_lines + r, symbol);
            start = st.on_lines + r;
        } else {
            for (j, f) in [f1, f2].into_iter().enumerate() {
                let _ = writeln!(out, "    polygon {}", j + 1);
                lines_block(&mut out, f, st.on_lines..st.on_lines + r, symbol);
            }
        }
    }
    let w = &c.nonsplitting_witness;
    let _ = writeln!(out, "  nonsplitting polygon at t = {}", w.lambda.render(symbol));
    for (i, l) in w.lines.iter().enumerate() {
        let _ = writeln!(out, "    E{}: {}", i + 1, render_line(l, symbol));
    }
    let dims: Vec<String> = c.rigidity.iter().map(|r| format!("{} {}", r.stage, r.dimension)).collect();
    let _ = writeln!(out, "  tangent dimensions: {}", dims.join(", "));
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(
        out,
        "  galois image equals partner: literal {}, up to projective change {}",
        yes(c.arithmetic.literal),
        yes(c.arithmetic.up_to_pgl)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{FieldDescriptor, FieldElement};

    #[test]
    fn integer_equations() {
        let q = FieldDescriptor::rationals();
        let l = ProjLine::from_ints([3, 2, -3], &q).unwrap();
        assert_eq!(render_line(&l, "w"), "3x + 2y - 3z = 0");
        let l = ProjLine::from_ints([0, -2, 1], &q).unwrap();
        assert_eq!(render_line(&l, "w"), "2y - z = 0");
    }

    #[test]
    fn quadratic_equations() {
        let f = FieldDescriptor::quadratic(Rational::from(1), Rational::from(1)).unwrap();
        let w = FieldElement::generator(&f).unwrap();
        let one = FieldElement::one(&f);
        let zero = FieldElement::zero(&f);
        let l = ProjLine::new([one.clone(), zero, -&w]).unwrap();
        assert_eq!(render_line(&l, "w"), "x - wz = 0");
        let l = ProjLine::new([one.clone(), &one + &w, one]).unwrap();
        assert_eq!(render_line(&l, "w"), "x + (1 + w)y + z = 0");
    }
}
