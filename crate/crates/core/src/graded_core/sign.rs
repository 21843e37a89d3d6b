use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `(-1)^e` as a parity bit.
pub fn odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

pub fn sign_of(e: i64) -> Scalar {
    Scalar::sign(odd(e))
}

/// Koszul sign of moving the element at position `perm[k]` to slot `k`.
/// Every pair of elements whose relative order flips contributes the product
/// of their degrees.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<Scalar> {
    Ok(Scalar::sign(koszul_parity(perm, degrees)?))
}

pub fn koszul_parity(perm: &[usize], degrees: &[i64]) -> Result<bool> {
    let n = perm.len();
    if degrees.len() != n {
        return Err(Error::Input(format!(
            "permutation has length {n} but {} degrees were given",
            degrees.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Input(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let mut e = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                e += degrees[perm[i]] * degrees[perm[j]];
            }
        }
    }
    Ok(odd(e))
}

/// Parity of the sign for the block swap `(x, y) -> (y, x)` with total degrees `dx`, `dy`.
pub fn swap_parity(dx: i64, dy: i64) -> bool {
    odd(dx * dy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // sorts by adjacent transpositions, flipping the sign at each odd/odd swap
    fn bubble_oracle(perm: &[usize], degrees: &[i64]) -> bool {
        let mut cur: Vec<usize> = (0..perm.len()).collect();
        let mut parity = false;
        for k in 0..perm.len() {
            let pos = cur.iter().position(|&x| x == perm[k]).unwrap();
            for q in (k..pos).rev() {
                parity ^= odd(degrees[cur[q]] * degrees[cur[q + 1]]);
                cur.swap(q, q + 1);
            }
        }
        parity
    }

    #[test]
    fn small_cases() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 1, 1]).unwrap(), Scalar::one());
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), Scalar::from_int(-1));
        // rotation (a,b,c) -> (c,a,b) with degrees (1,2,1): c crosses a and b
        let s = koszul_sign(&[2, 0, 1], &[1, 2, 1]).unwrap();
        assert_eq!(s, Scalar::from_int(-1));
        assert_eq!(bubble_oracle(&[2, 0, 1], &[1, 2, 1]), !s.is_one());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
        assert!(koszul_sign(&[0, 1], &[1]).is_err());
    }

    proptest! {
        #[test]
        fn matches_transposition_oracle(
            (perm, degrees) in (1usize..7).prop_flat_map(|n| (
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(-3i64..4, n),
            ))
        ) {
            prop_assert_eq!(koszul_parity(&perm, &degrees).unwrap(), bubble_oracle(&perm, &degrees));
        }
    }
}
