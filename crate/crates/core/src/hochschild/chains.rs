//! Normalized Hochschild chains `a₀ ⊗ a₁ ⊗ … ⊗ aₙ` with `aᵢ` (i ≥ 1) in the
//! augmentation ideal, stored as label tuples.

use crate::algebra_models::AlgebraModel;
use crate::graded_core::{sign, Scalar, Vector};

pub type Tuple = Vec<usize>;
pub type Chain = Vector<Tuple>;

/// Which formula computes the differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Path {
    /// Explicit product-and-differential formulas; dgas only.
    Dga,
    /// Bar-complex formulas through `b_k`; any A∞ model.
    Bar,
}

impl Path {
    pub fn for_model(m: &AlgebraModel) -> Path {
        if m.is_dga() {
            Path::Dga
        } else {
            Path::Bar
        }
    }
}

pub fn sh_sum(m: &AlgebraModel, t: &[usize]) -> i64 {
    t.iter().map(|&q| m.sh(q)).sum()
}

pub fn chain_degree(m: &AlgebraModel, t: &[usize]) -> i64 {
    m.deg(t[0]) + sh_sum(m, &t[1..])
}

pub fn chain_weight(m: &AlgebraModel, t: &[usize]) -> i64 {
    t.iter().map(|&q| m.weight(q)).sum()
}

fn splice(pre: &[usize], mid: usize, post: &[usize]) -> Tuple {
    let mut v = Vec::with_capacity(pre.len() + 1 + post.len());
    v.extend_from_slice(pre);
    v.push(mid);
    v.extend_from_slice(post);
    v
}

/// Hochschild differential through the bar operations.
pub fn delta_bar(m: &AlgebraModel, x: &Chain) -> Chain {
    let unit = m.unit();
    let top = m.max_arity.max(2);
    let mut out = Chain::new();
    for (t, c) in x {
        let n = t.len() - 1;
        let mut pre = 0;
        for i in 1..=n {
            pre += m.sh(t[i - 1]);
            for k in 1..=top {
                if i + k - 1 > n {
                    break;
                }
                let Some(res) = m.bar_op(k, &t[i..i + k]) else { continue };
                let s = c.clone().neg_if(sign::odd(pre));
                for (o, v) in res {
                    if *o != unit {
                        out.add_term(splice(&t[..i], *o, &t[i + k..]), v * &s);
                    }
                }
            }
        }
        for j in 0..=n {
            let (head, tail) = t.split_at(n + 1 - j);
            let s = c.clone().neg_if(sign::odd(sh_sum(m, tail) * sh_sum(m, head)));
            let mut rot = tail.to_vec();
            rot.extend_from_slice(head);
            for l in 0..=(n - j) {
                let k = j + 1 + l;
                if k > top {
                    break;
                }
                let Some(res) = m.bar_op(k, &rot[..k]) else { continue };
                for (o, v) in res {
                    out.add_term(splice(&[], *o, &rot[k..]), v * &s);
                }
            }
        }
    }
    out
}

/// Hochschild differential of a dga from `d` and the product.
pub fn delta_dga(m: &AlgebraModel, x: &Chain) -> Chain {
    let unit = m.unit();
    let mut out = Chain::new();
    for (t, c) in x {
        let n = t.len() - 1;
        // eps[i] = Σ_{j<i} |a_j| + i - 1
        let mut eps = vec![0i64; n + 2];
        let mut acc = 0;
        for i in 1..=n + 1 {
            acc += m.deg(t[i - 1]);
            eps[i] = acc + i as i64 - 1;
        }
        if let Some(d0) = m.d(t[0]) {
            for (o, v) in d0 {
                out.add_term(splice(&[], *o, &t[1..]), -(v * c));
            }
        }
        for i in 1..=n {
            let Some(di) = m.d(t[i]) else { continue };
            let s = c.clone().neg_if(sign::odd(eps[i]));
            for (o, v) in di {
                if *o != unit {
                    out.add_term(splice(&t[..i], *o, &t[i + 1..]), v * &s);
                }
            }
        }
        for i in 0..n {
            let Some(p) = m.product(t[i], t[i + 1]) else { continue };
            let s = c.clone().neg_if(sign::odd(eps[i + 1]));
            for (o, v) in p {
                if i == 0 || *o != unit {
                    out.add_term(splice(&t[..i], *o, &t[i + 2..]), v * &s);
                }
            }
        }
        if n >= 1 {
            let e = (m.deg(t[n]) - 1) * eps[n];
            if let Some(p) = m.product(t[n], t[0]) {
                let s = (-c.clone()).neg_if(sign::odd(e));
                for (o, v) in p {
                    out.add_term(splice(&[], *o, &t[1..n]), v * &s);
                }
            }
        }
    }
    out
}

pub fn delta(m: &AlgebraModel, path: Path, x: &Chain) -> Chain {
    match path {
        Path::Dga => delta_dga(m, x),
        Path::Bar => delta_bar(m, x),
    }
}

/// Connes operator on normalized chains.
pub fn connes_b(m: &AlgebraModel, x: &Chain) -> Chain {
    let unit = m.unit();
    let mut out = Chain::new();
    for (t, c) in x {
        if t[0] == unit {
            continue;
        }
        for i in 0..t.len() {
            let s = sign::odd(sh_sum(m, &t[i..]) * sh_sum(m, &t[..i]));
            let mut r = vec![unit];
            r.extend_from_slice(&t[i..]);
            r.extend_from_slice(&t[..i]);
            out.add_term(r, c.clone().neg_if(s));
        }
    }
    out
}

pub fn unit_chain(t: Tuple) -> Chain {
    Chain::single(t, Scalar::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::{fixture, fixtures::VALID};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_chain(m: &AlgebraModel, rng: &mut ChaCha8Rng, terms: usize, max_len: usize) -> Chain {
        let bar = m.bar_labels();
        let mut x = Chain::new();
        for _ in 0..terms {
            let len = if bar.is_empty() { 0 } else { rng.gen_range(0..=max_len) };
            let mut t = vec![rng.gen_range(0..m.dim())];
            t.extend((0..len).map(|_| bar[rng.gen_range(0..bar.len())]));
            x.add_term(t, Scalar::from_int(rng.gen_range(-4..5)));
        }
        x
    }

    #[test]
    fn chain_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in VALID {
            let m = fixture(name).unwrap();
            for _ in 0..30 {
                let x = random_chain(&m, &mut rng, 3, 4);
                let d = delta_bar(&m, &x);
                let b = connes_b(&m, &x);
                assert!(delta_bar(&m, &d).is_zero(), "δ² on {name}");
                assert!(connes_b(&m, &b).is_zero(), "B² on {name}");
                let mut anti = delta_bar(&m, &b);
                anti.add_vec(&connes_b(&m, &d));
                assert!(anti.is_zero(), "δB+Bδ on {name}");
                if m.is_dga() {
                    assert_eq!(delta_dga(&m, &x), d, "paths differ on {name}");
                }
            }
        }
    }
}
