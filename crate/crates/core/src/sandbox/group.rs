use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    /// `table[a][b] = a·b`.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// Cyclic factors when presented as `Z/n₁ × … × Z/n_k` (mixed radix, last
    /// factor fastest).
    factors: Option<Vec<usize>>,
}

impl FiniteGroup {
    /// `Z/n₁ × … × Z/n_k`. The empty list is the trivial group.
    pub fn cyclic_product(factors: &[usize]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Group("cyclic factors must be positive".into()));
        }
        let order: usize = factors.iter().product();
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for k in (0..factors.len()).rev() {
                d[k] = x % factors[k];
                x /= factors[k];
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (x, n)| acc * n + x);
        let table = (0..order)
            .map(|a| {
                let da = digits(a);
                (0..order)
                    .map(|b| {
                        let s: Vec<usize> = da
                            .iter()
                            .zip(digits(b))
                            .zip(factors)
                            .map(|((x, y), n)| (x + y) % n)
                            .collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        let name = if factors.is_empty() {
            String::from("Z/1")
        } else {
            factors
                .iter()
                .map(|n| alloc::format!("Z/{n}"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        let mut g = Self::from_table(&name, table)?;
        g.factors = Some(factors.to_vec());
        Ok(g)
    }

    /// Group from a multiplication table, checked for closure, identity,
    /// inverses and associativity.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Group(alloc::format!("{name}: table is not a closed square")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Group(alloc::format!("{name}: no identity")))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Group(alloc::format!("{name}: element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Group(alloc::format!("{name}: not associative")));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverse,
            factors: None,
        })
    }

    /// Group generated by permutations (composition `(στ)(i) = σ(τ(i))`).
    pub fn from_permutations(name: &str, generators: &[Vec<usize>]) -> Result<Self> {
        let deg = generators.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..deg).collect();
        let mut elems = vec![id];
        let mut k = 0;
        while k < elems.len() {
            for g in generators {
                let p: Vec<usize> = (0..deg).map(|i| elems[k][g[i]]).collect();
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            k += 1;
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..deg).map(|i| a[b[i]]).collect() };
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let c = compose(a, b);
                        elems.iter().position(|e| *e == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        Self::from_table(name, table)
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    /// Symmetries of the square.
    pub fn dihedral4() -> Self {
        Self::from_permutations("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap()
    }

    /// `{±1, ±i, ±j, ±k}`, multiplied as unit quaternions.
    pub fn quaternion8() -> Self {
        let units: [[i32; 4]; 8] = [
            [1, 0, 0, 0],
            [-1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, -1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, -1, 0],
            [0, 0, 0, 1],
            [0, 0, 0, -1],
        ];
        let table = units
            .iter()
            .map(|p| {
                units
                    .iter()
                    .map(|q| {
                        let f = |v: [i32; 4]| v.map(|c| c as f64);
                        let r = crate::field::quaternion_mul(f(*p), f(*q)).map(|c| c as i32);
                        units.iter().position(|u| *u == r).unwrap()
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", table).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.table.len()
    }
    pub fn factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, a), self.inverse(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Dual group as pointwise multipliers `χ(x)`, for cyclic presentations.
    pub fn characters(&self) -> Result<Vec<Vec<Complex64>>> {
        if !self.is_abelian() {
            return Err(Error::Group(alloc::format!("{} is not abelian", self.name)));
        }
        let factors = self.factors.as_ref().ok_or_else(|| {
            Error::Group(alloc::format!("{}: characters need a cyclic-factor presentation", self.name))
        })?;
        let n = self.order();
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for k in (0..factors.len()).rev() {
                d[k] = x % factors[k];
                x /= factors[k];
            }
            d
        };
        Ok((0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|x| {
                        let phase: f64 = da
                            .iter()
                            .zip(digits(x))
                            .zip(factors)
                            .map(|((a, x), m)| ((a * x) % m) as f64 / *m as f64)
                            .sum();
                        Complex64::from_polar(1.0, 2.0 * PI * phase)
                    })
                    .collect()
            })
            .collect())
    }

    /// `(L_g φ)(x) = φ(g⁻¹x)`.
    pub fn left_translation(&self, g: usize) -> CMatrix {
        let gi = self.inverse(g);
        self.permutation_matrix(|x| self.mul(gi, x))
    }

    /// `(R_g φ)(x) = φ(xg)`.
    pub fn right_translation(&self, g: usize) -> CMatrix {
        self.permutation_matrix(|x| self.mul(x, g))
    }

    fn permutation_matrix(&self, src: impl Fn(usize) -> usize) -> CMatrix {
        let n = self.order();
        let mut m = CMatrix::zeros(n, n);
        for x in 0..n {
            m[(x, src(x))] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// All left and right translations.
    pub fn biregular_action(&self) -> Vec<CMatrix> {
        (0..self.order())
            .map(|g| self.left_translation(g))
            .chain((0..self.order()).map(|g| self.right_translation(g)))
            .collect()
    }

    /// All left translations (for abelian groups, the translation action).
    pub fn translation_action(&self) -> Vec<CMatrix> {
        (0..self.order()).map(|g| self.left_translation(g)).collect()
    }

    /// `φ ↦ c * φ = Σ_y c(y) L_y φ` for a class function given per class
    /// (in the order of [`FiniteGroup::conjugacy_classes`]).
    pub fn class_convolution(&self, class_values: &[Complex64]) -> Result<CMatrix> {
        let classes = self.conjugacy_classes();
        if class_values.len() != classes.len() {
            return Err(Error::Group(alloc::format!(
                "{} classes but {} values",
                classes.len(),
                class_values.len()
            )));
        }
        let n = self.order();
        let mut m = CMatrix::zeros(n, n);
        for (class, &c) in classes.iter().zip(class_values) {
            for &y in class {
                m += self.left_translation(y) * c;
            }
        }
        Ok(m)
    }
}

/// Invariant-factor lists `n₁ | n₂ | …` of every abelian group of order at
/// most `max_order`, one per isomorphism class (the trivial group is `[]`).
pub fn abelian_groups_up_to(max_order: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // Factors listed smallest first, each dividing the next.
        for d in 2..=rest {
            if rest.is_multiple_of(d) && d % last == 0 {
                let after = rest / d;
                // Every later factor is a multiple of d, so d^k must divide what is left.
                if after.is_multiple_of(d) || after == 1 {
                    acc.push(d);
                    extend(after, d, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_order {
        extend(n, 1, &mut Vec::new(), &mut out);
    }
    out
}
