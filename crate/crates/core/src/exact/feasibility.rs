//! Exact feasibility of mixed strict / non-strict / equality systems by
//! Fourier-Motzkin elimination, with a witness on success.
//!
//! Every row has length `nvars + 1`; entry 0 is the constant term, so a row
//! `[c, a1, .., ak]` stands for `c + a.x`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::ratmatrix::RatMatrix;
use super::rational::{dot, primitive_positive, Rational};

#[derive(Clone, Debug)]
struct Ineq {
    c: Rational,
    a: Vec<Rational>,
    strict: bool,
}

fn push_dedup(set: &mut BTreeMap<Vec<Rational>, bool>, c: Rational, a: Vec<Rational>, strict: bool) {
    let mut key = Vec::with_capacity(a.len() + 1);
    key.push(c);
    key.extend(a);
    let key = primitive_positive(&key);
    let e = set.entry(key).or_insert(strict);
    *e = *e || strict;
}

fn from_set(set: BTreeMap<Vec<Rational>, bool>) -> Vec<Ineq> {
    set.into_iter()
        .map(|(k, strict)| Ineq { c: k[0].clone(), a: k[1..].to_vec(), strict })
        .collect()
}

/// Constant-only row that cannot hold.
fn violated(i: &Ineq) -> bool {
    i.a.iter().all(|x| x.is_zero()) && (i.c.is_negative() || (i.strict && i.c.is_zero()))
}

pub fn feasible(
    strict: &[Vec<Rational>],
    nonstrict: &[Vec<Rational>],
    equalities: &[Vec<Rational>],
    nvars: usize,
) -> Option<Vec<Rational>> {
    // Parametrise the equality solution set as x = xp + N y.
    let (xp, basis) = if equalities.is_empty() {
        let id = (0..nvars)
            .map(|i| (0..nvars).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect::<Vec<Vec<Rational>>>();
        (vec![Rational::zero(); nvars], id)
    } else {
        let a: Vec<Vec<Rational>> = equalities.iter().map(|r| r[1..].to_vec()).collect();
        let b: Vec<Rational> = equalities.iter().map(|r| -r[0].clone()).collect();
        let m = RatMatrix::from_rows(&a, nvars);
        let xp = m.solve(&b)?;
        (xp, m.kernel())
    };
    let k = basis.len();
    let mut rows: BTreeMap<Vec<Rational>, bool> = BTreeMap::new();
    for (r, s) in strict.iter().map(|r| (r, true)).chain(nonstrict.iter().map(|r| (r, false))) {
        let c = &r[0] + dot(&r[1..], &xp);
        let a: Vec<Rational> = basis.iter().map(|v| dot(&r[1..], v)).collect();
        push_dedup(&mut rows, c, a, s);
    }
    let mut current = from_set(rows);
    let mut levels: Vec<Vec<Ineq>> = vec![Vec::new(); k];
    for j in (0..k).rev() {
        if current.iter().any(violated) {
            return None;
        }
        levels[j] = current.clone();
        let mut next: BTreeMap<Vec<Rational>, bool> = BTreeMap::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for i in current {
            if i.a[j].is_positive() {
                pos.push(i);
            } else if i.a[j].is_negative() {
                neg.push(i);
            } else {
                let mut a = i.a.clone();
                a.truncate(j);
                push_dedup(&mut next, i.c, a, i.strict);
            }
        }
        for p in &pos {
            for n in &neg {
                let lp = -n.a[j].clone();
                let ln = p.a[j].clone();
                let c = &p.c * &lp + &n.c * &ln;
                let a: Vec<Rational> = (0..j).map(|t| &p.a[t] * &lp + &n.a[t] * &ln).collect();
                push_dedup(&mut next, c, a, p.strict || n.strict);
            }
        }
        current = from_set(next);
    }
    if current.iter().any(violated) {
        return None;
    }
    // Back substitution.
    let mut y: Vec<Rational> = Vec::with_capacity(k);
    for j in 0..k {
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for i in &levels[j] {
            let aj = &i.a[j];
            if aj.is_zero() {
                continue;
            }
            let rest = &i.c + dot(&i.a[..j], &y);
            let bound = -rest / aj;
            if aj.is_positive() {
                if lo.as_ref().map_or(true, |(l, s)| bound > *l || (bound == *l && i.strict && !s)) {
                    lo = Some((bound, i.strict));
                }
            } else if hi.as_ref().map_or(true, |(h, s)| bound < *h || (bound == *h && i.strict && !s)) {
                hi = Some((bound, i.strict));
            }
        }
        let v = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some((l, _)), None) => l.floor() + Rational::one(),
            (None, Some((h, _))) => h.ceil() - Rational::one(),
            (Some((l, ls)), Some((h, hs))) => {
                if l < h {
                    (l + h) / Rational::from_integer(2.into())
                } else if l == h && !ls && !hs {
                    l
                } else {
                    return None;
                }
            }
        };
        y.push(v);
    }
    let mut x = xp;
    for (t, v) in basis.iter().enumerate() {
        for (xi, bi) in x.iter_mut().zip(v) {
            *xi += &y[t] * bi;
        }
    }
    Some(x)
}

/// Check a witness against the system.
pub fn satisfies(x: &[Rational], strict: &[Vec<Rational>], nonstrict: &[Vec<Rational>], eq: &[Vec<Rational>]) -> bool {
    let val = |r: &Vec<Rational>| &r[0] + dot(&r[1..], x);
    strict.iter().all(|r| val(r).is_positive())
        && nonstrict.iter().all(|r| !val(r).is_negative())
        && eq.iter().all(|r| val(r).is_zero())
}
