//! Small reference theories: symmetric groups, product actions and the
//! diagonal-coset action of `S_n × S_n`.

use crate::error::Result;
use crate::group::{Limits, Subgroup};
use crate::perm::Permutation;
use crate::theory::GlobalTheory;

/// A theory built from named factors, remembering each factor's generators.
#[derive(Debug)]
pub struct Model {
    pub theory: GlobalTheory,
    pub factor_generators: Vec<Vec<Permutation>>,
}

impl Model {
    /// Subgroup generated by the generators of factor `i`.
    pub fn factor(&self, i: usize) -> Subgroup {
        self.theory
            .group()
            .subgroup_generated_by(&self.factor_generators[i])
            .expect("factor generators are group elements")
    }

    /// Subgroup generated by the listed factors.
    pub fn factors(&self, which: &[usize]) -> Subgroup {
        let gens: Vec<Permutation> = which
            .iter()
            .flat_map(|&i| self.factor_generators[i].iter().cloned())
            .collect();
        self.theory
            .group()
            .subgroup_generated_by(&gens)
            .expect("factor generators are group elements")
    }
}

/// Generators `(0 1)` and `(0 1 … n−1)` of `S_n`.
pub fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    let swap = Permutation::from_cycles(n, &[&[0, 1]]).expect("valid cycle");
    let cycle: Vec<usize> = (0..n).collect();
    let rot = Permutation::from_cycles(n, &[&cycle]).expect("valid cycle");
    vec![swap, rot]
}

/// `S_n` acting naturally on `n` points.
pub fn symmetric(n: usize) -> Result<Model> {
    let gens = symmetric_generators(n);
    let theory = GlobalTheory::from_generators(n, &gens, Limits::default())?;
    Ok(Model {
        theory,
        factor_generators: vec![gens],
    })
}

/// Lifts a permutation of factor `k` to the product action on the grid
/// with the given side lengths. Points are coded in mixed radix with the
/// first factor most significant, so for two factors of size 3 the point
/// `(i, j)` is `3i + j`.
pub fn lift_to_grid(sides: &[usize], k: usize, p: &Permutation) -> Permutation {
    let total: usize = sides.iter().product();
    let stride: usize = sides[k + 1..].iter().product();
    let images = (0..total)
        .map(|x| {
            let digit = (x / stride) % sides[k];
            x - digit * stride + p.apply(digit) * stride
        })
        .collect();
    Permutation::new(images).expect("lifted permutation is a bijection")
}

/// `S_{n₁} × … × S_{n_k}` acting coordinate-wise on the grid `∏ nᵢ`.
pub fn symmetric_product(sides: &[usize]) -> Result<Model> {
    let total: usize = sides.iter().product();
    let factor_generators: Vec<Vec<Permutation>> = sides
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            symmetric_generators(n)
                .iter()
                .map(|g| lift_to_grid(sides, k, g))
                .collect()
        })
        .collect();
    let all: Vec<Permutation> = factor_generators.iter().flatten().cloned().collect();
    let theory = GlobalTheory::from_generators(total, &all, Limits::default())?;
    Ok(Model {
        theory,
        factor_generators,
    })
}

/// Every element of `S_n`, lexicographically ordered.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `S_n × S_n` acting on the cosets of its diagonal subgroup.
///
/// The cosets are identified with `S_n` via `(a, b)Δ ↦ ab⁻¹`, so `(x, y)` acts
/// by `g ↦ x g y⁻¹`. Points are the elements of `S_n` in lexicographic order.
pub fn diagonal_cosets(n: usize) -> Result<Model> {
    let elems = all_permutations(n);
    let index = |v: &[usize]| elems.iter().position(|e| e == v).expect("element of S_n");
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
    let inverse = |a: &[usize]| -> Vec<usize> {
        let mut r = vec![0; a.len()];
        for (i, &j) in a.iter().enumerate() {
            r[j] = i;
        }
        r
    };
    let gens = symmetric_generators(n);
    let left: Vec<Permutation> = gens
        .iter()
        .map(|x| {
            let images = elems.iter().map(|g| index(&compose(x.images(), g))).collect();
            Permutation::new(images).expect("left multiplication is a bijection")
        })
        .collect();
    let right: Vec<Permutation> = gens
        .iter()
        .map(|y| {
            let yinv = inverse(y.images());
            let images = elems.iter().map(|g| index(&compose(g, &yinv))).collect();
            Permutation::new(images).expect("right multiplication is a bijection")
        })
        .collect();
    let all: Vec<Permutation> = left.iter().chain(right.iter()).cloned().collect();
    let theory = GlobalTheory::from_generators(elems.len(), &all, Limits::default())?;
    Ok(Model {
        theory,
        factor_generators: vec![left, right],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_theories_have_expected_orders() {
        assert_eq!(symmetric(3).unwrap().theory.order(), 6);
        assert_eq!(symmetric(4).unwrap().theory.order(), 24);
        let t2 = symmetric_product(&[3, 3]).unwrap();
        assert_eq!((t2.theory.degree(), t2.theory.order()), (9, 36));
        let t3 = diagonal_cosets(3).unwrap();
        assert_eq!((t3.theory.degree(), t3.theory.order()), (6, 36));
        let t4 = symmetric_product(&[3, 3, 3]).unwrap();
        assert_eq!((t4.theory.degree(), t4.theory.order()), (27, 216));
    }

    #[test]
    fn grid_coding_puts_first_factor_on_rows() {
        let swap = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let lifted = lift_to_grid(&[3, 3], 0, &swap);
        // (0, j) ↦ (1, j)
        assert_eq!(&lifted.images()[..3], &[3, 4, 5]);
        let lifted = lift_to_grid(&[3, 3], 1, &swap);
        assert_eq!(&lifted.images()[..3], &[1, 0, 2]);
    }

    #[test]
    fn factors_commute_in_product_action() {
        let m = symmetric_product(&[3, 3]).unwrap();
        let g = m.theory.group();
        for a in m.factor(0).members() {
            for b in m.factor(1).members() {
                assert!(g.commute(a, b));
            }
        }
        assert_eq!(m.factor(0).order(), 6);
        assert_eq!(m.factors(&[0, 1]).order(), 36);
    }
}
