//! Normalized Hochschild cochains with values in `A`, keyed by
//! `(inputs, output)`, and their transfer to `A*`-valued cochains.

use super::chains::{sh_sum, Chain, Path, Tuple};
use crate::algebra_models::AlgebraModel;
use crate::graded_core::{sign, Vector};

pub type ACochain = Vector<(Tuple, usize)>;

/// Unshifted degree `|o| - Σ sh(v)`.
pub fn cochain_degree(m: &AlgebraModel, v: &[usize], o: usize) -> i64 {
    m.deg(o) - sh_sum(m, v)
}

/// Weight `w_top - w(o) + Σ w(v)`, the weight of `ω_♯` of the entry.
pub fn cochain_weight(m: &AlgebraModel, v: &[usize], o: usize) -> i64 {
    m.trace_weight().unwrap_or(0) - m.weight(o) + v.iter().map(|&q| m.weight(q)).sum::<i64>()
}

fn bar_degree(m: &AlgebraModel, v: &[usize], o: usize) -> i64 {
    m.sh(o) - sh_sum(m, v)
}

fn cat(parts: &[&[usize]]) -> Tuple {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// `b{F}`: insert `F` into one slot of a bar operation.
fn b_brace(m: &AlgebraModel, f: &ACochain, w: usize) -> ACochain {
    let mut out = ACochain::new();
    for ((v, o), c) in f {
        let fd = bar_degree(m, v, *o);
        for slot in m.bar_consuming(*o) {
            let z = &slot.inputs;
            let j = slot.slot;
            if z.len() - 1 + v.len() > w {
                continue;
            }
            let u = cat(&[&z[..j], v, &z[j + 1..]]);
            let s = c.clone().neg_if(sign::odd(fd * sh_sum(m, &z[..j])));
            for (q, cc) in m.bar_op(slot.arity, z).into_iter().flatten() {
                out.add_term((u.clone(), *q), cc * &s);
            }
        }
    }
    out
}

/// `F{b}`: precompose one input of `F` with a bar operation.
fn brace_b(m: &AlgebraModel, f: &ACochain, w: usize) -> ACochain {
    let mut out = ACochain::new();
    for ((v, o), c) in f {
        for j in 0..v.len() {
            let s = c.clone().neg_if(sign::odd(sh_sum(m, &v[..j])));
            for (_, z, cc) in m.bar_producing(v[j]) {
                if v.len() - 1 + z.len() > w {
                    continue;
                }
                out.add_term((cat(&[&v[..j], z, &v[j + 1..]]), *o), cc * &s);
            }
        }
    }
    out
}

/// `δ*F = b{F} - (-1)^{|F|'} F{b}`, arities above `w` dropped.
pub fn dstar_bar(m: &AlgebraModel, f: &ACochain, w: usize) -> ACochain {
    let mut out = b_brace(m, f, w);
    for ((u, o), c) in brace_b(m, f, w).iter() {
        let fd = bar_degree(m, u, *o) - 1;
        out.add_term((u.clone(), *o), -c.clone().neg_if(sign::odd(fd)));
    }
    out
}

/// Explicit dga form of `δ*`, arities above `w` dropped.
pub fn dstar_dga(m: &AlgebraModel, f: &ACochain, w: usize) -> ACochain {
    let unit = m.unit();
    let bar = m.bar_labels();
    let mut out = ACochain::new();
    for ((v, o), c) in f {
        let fdeg = cochain_degree(m, v, *o);
        if let Some(d) = m.d(*o) {
            for (q, x) in d {
                out.add_term((v.clone(), *q), -(x * c));
            }
        }
        if v.len() < w {
            for &y in &bar {
                let mut u = v.clone();
                u.push(y);
                let s = c.clone().neg_if(sign::odd(m.deg(*o)));
                for (q, x) in m.product(*o, y).into_iter().flatten() {
                    out.add_term((u.clone(), *q), x * &s);
                }
                let mut u = vec![y];
                u.extend_from_slice(v);
                let s = c.clone().neg_if(sign::odd((fdeg - 1) * m.sh(y) + m.deg(y)));
                for (q, x) in m.product(y, *o).into_iter().flatten() {
                    out.add_term((u.clone(), *q), x * &s);
                }
            }
        }
        for i in 0..v.len() {
            let e = fdeg + sh_sum(m, &v[..i]);
            for (k, z, x) in m.ops_producing(v[i]) {
                if *k == 1 {
                    let s = c.clone().neg_if(!sign::odd(e));
                    out.add_term((cat(&[&v[..i], z, &v[i + 1..]]), *o), x * &s);
                } else if *k == 2 && v.len() < w && !z.contains(&unit) {
                    let s = c.clone().neg_if(sign::odd(e + m.deg(z[0])));
                    out.add_term((cat(&[&v[..i], z, &v[i + 1..]]), *o), x * &s);
                }
            }
        }
    }
    out
}

pub fn dstar(m: &AlgebraModel, path: Path, f: &ACochain, w: usize) -> ACochain {
    match path {
        Path::Dga => dstar_dga(m, f, w),
        Path::Bar => dstar_bar(m, f, w),
    }
}

/// `b{F, G}` for single entries.
fn b_brace2(m: &AlgebraModel, (v, o): (&Tuple, usize), (v2, o2): (&Tuple, usize), w: usize) -> ACochain {
    let mut out = ACochain::new();
    let fd = bar_degree(m, v, o);
    let gd = bar_degree(m, v2, o2);
    for (&k, tab) in m.bar_tables() {
        if k < 2 || k - 2 + v.len() + v2.len() > w {
            continue;
        }
        for (z, res) in tab {
            for i in 0..k {
                if z[i] != o {
                    continue;
                }
                for j in i + 1..k {
                    if z[j] != o2 {
                        continue;
                    }
                    let others = z[..i].iter().chain(&z[i + 1..j]).chain(&z[j + 1..]);
                    if others.into_iter().any(|&q| q == m.unit()) {
                        continue;
                    }
                    let u = cat(&[&z[..i], v, &z[i + 1..j], v2, &z[j + 1..]]);
                    let e = fd * sh_sum(m, &z[..i]) + gd * (sh_sum(m, &z[..j]) - m.sh(o) + sh_sum(m, v));
                    for (q, cc) in res {
                        out.add_term((u.clone(), *q), cc.clone().neg_if(sign::odd(e)));
                    }
                }
            }
        }
    }
    out
}

/// `F ∪ G = (-1)^{|F|} b{F, G}`.
pub fn cup_bar(m: &AlgebraModel, f: &ACochain, g: &ACochain, w: usize) -> ACochain {
    let mut out = ACochain::new();
    for ((v, o), c) in f {
        let s = c.clone().neg_if(sign::odd(cochain_degree(m, v, *o)));
        for ((v2, o2), c2) in g {
            let part = b_brace2(m, (v, *o), (v2, *o2), w);
            out.add_scaled(&part, &(&s * c2));
        }
    }
    out
}

/// `(F ∪ G)(v', v'') = (-1)^{|G| Σ sh(v')} F(v') G(v'')`.
pub fn cup_dga(m: &AlgebraModel, f: &ACochain, g: &ACochain, w: usize) -> ACochain {
    let mut out = ACochain::new();
    for ((v, o), c) in f {
        let sv = sh_sum(m, v);
        for ((v2, o2), c2) in g {
            if v.len() + v2.len() > w {
                continue;
            }
            let Some(p) = m.product(*o, *o2) else { continue };
            let s = (c * c2).neg_if(sign::odd(cochain_degree(m, v2, *o2) * sv));
            let u = cat(&[v, v2]);
            for (q, x) in p {
                out.add_term((u.clone(), *q), x * &s);
            }
        }
    }
    out
}

pub fn cup(m: &AlgebraModel, path: Path, f: &ACochain, g: &ACochain, w: usize) -> ACochain {
    match path {
        Path::Dga => cup_dga(m, f, g, w),
        Path::Bar => cup_bar(m, f, g, w),
    }
}

/// `ω_♯F(x₀; v̄) = (-1)^{|x₀| Σ sh(v̄)} ω(F(v̄), x₀)`, an `A*`-valued cochain
/// given by its values on chain tuples.
pub fn omega_sharp(m: &AlgebraModel, f: &ACochain) -> Chain {
    let mut out = Chain::new();
    for ((v, o), c) in f {
        let sv = sh_sum(m, v);
        for x0 in 0..m.dim() {
            let w = m.omega(*o, x0);
            if w.is_zero() {
                continue;
            }
            let mut t = vec![x0];
            t.extend_from_slice(v);
            out.add_term(t, (c * &w).neg_if(sign::odd(m.deg(x0) * sv)));
        }
    }
    out
}

/// `F(a, a, …, a)` summed over arities, for `a` given by label coefficients.
pub fn evaluate_on_powers(f: &ACochain, a: &Vector<usize>) -> Vector<usize> {
    let mut out = Vector::new();
    for ((v, o), c) in f {
        let mut p = c.clone();
        for q in v {
            p = &p * &a.coeff(q);
            if p.is_zero() {
                break;
            }
        }
        out.add_term(*o, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::{fixture, fixtures::VALID};
    use crate::graded_core::Scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cochain(m: &AlgebraModel, rng: &mut ChaCha8Rng, n: usize) -> ACochain {
        let bar = m.bar_labels();
        let mut f = ACochain::new();
        for _ in 0..n {
            let len = if bar.is_empty() { 0 } else { rng.gen_range(0..4) };
            let v: Tuple = (0..len).map(|_| bar[rng.gen_range(0..bar.len())]).collect();
            f.add_term((v, rng.gen_range(0..m.dim())), Scalar::from_int(rng.gen_range(-3..4)));
        }
        f
    }

    #[test]
    fn dstar_squares_to_zero_and_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in VALID {
            let m = fixture(name).unwrap();
            for _ in 0..20 {
                let f = random_cochain(&m, &mut rng, 4);
                let d = dstar_bar(&m, &f, 5);
                assert!(dstar_bar(&m, &d, 5).is_zero(), "{name}");
                if m.is_dga() {
                    assert_eq!(dstar_dga(&m, &f, 5), d, "{name} {f:?}");
                }
            }
        }
    }

    #[test]
    fn cup_paths_agree_and_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in VALID {
            let m = fixture(name).unwrap();
            for _ in 0..10 {
                let f = random_cochain(&m, &mut rng, 1);
                let g = random_cochain(&m, &mut rng, 1);
                let c = cup_bar(&m, &f, &g, 6);
                if m.is_dga() {
                    assert_eq!(cup_dga(&m, &f, &g, 6), c, "{name}");
                }
                // δ(F∪G) = δF∪G + (-1)^{|F|} F∪δG
                let Some(((v, o), _)) = f.iter().next() else { continue };
                let sf = sign::odd(cochain_degree(&m, v, *o));
                let lhs = dstar_bar(&m, &c, 6);
                let mut rhs = cup_bar(&m, &dstar_bar(&m, &f, 6), &g, 6);
                rhs.add_scaled(&cup_bar(&m, &f, &dstar_bar(&m, &g, 6), 6), &Scalar::sign(sf));
                let keep = |x: &ACochain| x.filter_map_keys(|k| (k.0.len() <= 6).then(|| k.clone()));
                assert_eq!(keep(&lhs), keep(&rhs), "{name}");
            }
        }
    }

    #[test]
    fn omega_sharp_intertwines_differentials() {
        use crate::hochschild::chains::{delta_bar, Chain};
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in VALID {
            let m = fixture(name).unwrap();
            let bar = m.bar_labels();
            for _ in 0..20 {
                let f = random_cochain(&m, &mut rng, 1);
                let Some(((v, o), _)) = f.iter().next() else { continue };
                let fdeg = cochain_degree(&m, v, *o);
                let lhs = omega_sharp(&m, &dstar_bar(&m, &f, 6));
                let rhs = omega_sharp(&m, &f);
                for _ in 0..10 {
                    let len = if bar.is_empty() { 0 } else { rng.gen_range(0..5) };
                    let mut t = vec![rng.gen_range(0..m.dim())];
                    t.extend((0..len).map(|_| bar[rng.gen_range(0..bar.len())]));
                    let x = Chain::single(t, Scalar::one());
                    let a = lhs.dot(&x);
                    let b = rhs.dot(&delta_bar(&m, &x)).neg_if(!sign::odd(fdeg));
                    assert_eq!(a, b, "{name}");
                }
            }
        }
    }
}
