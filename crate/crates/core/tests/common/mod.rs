//! Reference implementations shared by the integration suites. None of them
//! go through the library's matrices, coset filters or Chevalley tables:
//! they only read the Cartan matrix and the list of reduced words.

#![allow(dead_code)]

use g2motive::rootsys::CartanMatrix;
use g2motive::weyl::WeylGroup;
use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub fn group(name: &str) -> WeylGroup {
    g2motive::build_group(name, 1_000_000).unwrap()
}

/// Permutation of `0..=n` for a word in the adjacent transpositions of
/// `S_{n+1}`, acting on positions: `perm[k]` is the image of `k`.
pub fn perm_of_word(n: usize, word: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..=n).collect();
    for &i in word {
        perm.swap(i - 1, i);
    }
    perm
}

pub fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&k| a[k]).collect()
}

pub fn perm_inversions(p: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

pub fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Weights in simple-root coordinates over Q.
pub struct WeightSpace {
    cartan: Vec<Vec<i64>>,
    rank: usize,
}

impl WeightSpace {
    pub fn new(c: &CartanMatrix) -> Self {
        Self {
            cartan: c.rows(),
            rank: c.rank(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `<mu, alpha_i^vee>` (1-based `i`).
    pub fn pair(&self, mu: &[Q], i: usize) -> Q {
        (0..self.rank)
            .map(|j| mu[j] * Q::from(self.cartan[i - 1][j] as i128))
            .sum()
    }

    pub fn reflect(&self, i: usize, mu: &[Q]) -> Vec<Q> {
        let k = self.pair(mu, i);
        let mut out = mu.to_vec();
        out[i - 1] -= k;
        out
    }

    /// `w(mu)` for `w = s_{a1} ... s_{ak}`.
    pub fn act(&self, word: &[usize], mu: &[Q]) -> Vec<Q> {
        word.iter().rev().fold(mu.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn simple_root(&self, i: usize) -> Vec<Q> {
        (0..self.rank)
            .map(|j| Q::from(i128::from(j + 1 == i)))
            .collect()
    }

    /// `omega_k` by Gauss-Jordan on the Cartan matrix.
    pub fn fundamental(&self, k: usize) -> Vec<Q> {
        let n = self.rank;
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q> = self.cartan[i].iter().map(|&x| Q::from(x as i128)).collect();
                row.push(Q::from(i128::from(i + 1 == k)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != Q::from(0)).unwrap();
            a.swap(col, piv);
            let p = a[col][col];
            for x in a[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r][col];
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[n]).collect()
    }

    pub fn combo(&self, m: &[i64]) -> Vec<Q> {
        let mut out = vec![Q::from(0); self.rank];
        for (k, &c) in m.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(self.fundamental(k + 1)) {
                *o += x * Q::from(c as i128);
            }
        }
        out
    }

    /// All roots as the orbit of the simple roots under the listed words.
    pub fn roots(&self, words: &[Vec<usize>]) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = Vec::new();
        for w in words {
            for i in 1..=self.rank {
                let r = self.act(w, &self.simple_root(i));
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }
}

pub fn is_positive(v: &[Q]) -> bool {
    v.iter().all(|x| *x >= Q::from(0)) && v.iter().any(|x| *x > Q::from(0))
}

/// Atiyah-Bott localization on `G/P` for the Levi `levi`, with respect to
/// a generic one-parameter subgroup. Fixed points are the cosets `w W_P`;
/// the tangent weights at `w` are `w(beta)` for negative roots `beta`
/// outside the Levi, and the line bundle `L_lambda` has weight `-w(lambda)`.
pub struct Localization<'a> {
    pub space: WeightSpace,
    words: Vec<Vec<usize>>,
    levi: Vec<usize>,
    tangent: Vec<Vec<Q>>,
    generic: Vec<Q>,
    levi_order: i128,
    _group: &'a WeylGroup,
}

impl<'a> Localization<'a> {
    pub fn new(g: &'a WeylGroup, levi: &[usize]) -> Self {
        let space = WeightSpace::new(g.root_system().cartan());
        let words: Vec<Vec<usize>> = g.elements().iter().map(|w| w.word().to_vec()).collect();
        let roots = space.roots(&words);
        let in_levi = |r: &[Q]| (0..space.rank()).all(|j| r[j] == Q::from(0) || levi.contains(&(j + 1)));
        let tangent: Vec<Vec<Q>> = roots
            .iter()
            .filter(|r| !is_positive(r) && !in_levi(r))
            .cloned()
            .collect();
        let generic: Vec<Q> = (0..space.rank())
            .map(|j| Q::from([7i128, 11, 13, 17, 19, 23, 29, 31][j]))
            .collect();
        // |W_P| as the stabilizer of a weight that is regular off the Levi.
        let off: Vec<i64> = (1..=space.rank()).map(|k| i64::from(!levi.contains(&k))).collect();
        let lam = space.combo(&off);
        let levi_order = words.iter().filter(|w| space.act(w, &lam) == lam).count() as i128;
        Self {
            space,
            words,
            levi: levi.to_vec(),
            tangent,
            generic,
            levi_order,
            _group: g,
        }
    }

    pub fn dimension(&self) -> usize {
        self.tangent.len()
    }

    pub fn eval(&self, mu: &[Q]) -> Q {
        mu.iter().zip(&self.generic).map(|(a, b)| a * b).sum()
    }

    /// Equivariant first Chern class of `L_lambda` at the fixed point `w`.
    pub fn line(&self, word: &[usize], lambda: &[Q]) -> Q {
        -self.eval(&self.space.act(word, lambda))
    }

    /// `sum over fixed points of f(w) / euler(T_w)`; `f` must be constant on
    /// cosets `w W_P`.
    pub fn integrate(&self, f: impl Fn(&[usize]) -> Q) -> Q {
        let mut total = Q::from(0);
        for w in &self.words {
            let euler: Q = self
                .tangent
                .iter()
                .map(|b| self.eval(&self.space.act(w, b)))
                .product();
            total += f(w) / euler;
        }
        total / Q::from(self.levi_order)
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }
}

/// `int_{G/P} c1(L_lambda)^dim` by localization.
pub fn localized_degree(g: &WeylGroup, levi: &[usize], lambda: &[i64]) -> Q {
    let loc = Localization::new(g, levi);
    let lam = loc.space.combo(lambda);
    let n = loc.dimension() as i32;
    loc.integrate(|w| loc.line(w, &lam).pow(n))
}

/// `int_{G/P_l} h^{dim-2} c2(E)` with `P_l` the Levi `{levi}`, `h = omega_side`
/// and `E` the pushforward of `O(rho)` along `G/B -> G/P_l`. The fiber over
/// `w` is the line through `w` and `w s_l`, so `E` splits there with the
/// weights of `O(rho)` at those two points.
pub fn localized_zero_locus_degree(g: &WeylGroup, levi: usize, side: usize) -> Q {
    let loc = Localization::new(g, &[levi]);
    let rho = loc.space.combo(&vec![1; loc.space.rank()]);
    let h = loc.space.fundamental(side);
    let n = loc.dimension() as i32;
    loc.integrate(|w| {
        let mut ws = w.to_vec();
        ws.push(levi);
        let c2 = loc.line(w, &rho) * loc.line(&ws, &rho);
        loc.line(w, &h).pow(n - 2) * c2
    })
}

/// Borel-Hirzebruch: `deg(G/P, L_lambda) = dim! * prod <lambda, beta^vee> /
/// <rho, beta^vee>` over positive roots outside the Levi. Coroots come from
/// the invariant form built from root-length ratios.
pub fn borel_hirzebruch_degree(g: &WeylGroup, levi: &[usize], lambda: &[i64]) -> Q {
    let space = WeightSpace::new(g.root_system().cartan());
    let words: Vec<Vec<usize>> = g.elements().iter().map(|w| w.word().to_vec()).collect();
    let n = space.rank();
    let rows = g.root_system().cartan().rows();
    // d_i proportional to (alpha_i, alpha_i)/2, found by propagating
    // d_i a_ij = d_j a_ji along the Dynkin diagram.
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::from(1));
    for _ in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != 0 && i != j {
                    if let (Some(di), None) = (d[i], d[j]) {
                        d[j] = Some(di * Q::from(rows[i][j] as i128) / Q::from(rows[j][i] as i128));
                    }
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.unwrap_or(Q::from(1))).collect();
    let form = |a: &[Q], b: &[Q]| -> Q {
        let mut s = Q::from(0);
        for i in 0..n {
            for j in 0..n {
                s += a[i] * b[j] * d[i] * Q::from(rows[i][j] as i128);
            }
        }
        s
    };
    let lam = space.combo(lambda);
    let rho = space.combo(&vec![1; n]);
    let mut num = Q::from(1);
    let mut den = Q::from(1);
    let mut dim = 0;
    for b in space.roots(&words) {
        let in_levi = (0..n).all(|j| b[j] == Q::from(0) || levi.contains(&(j + 1)));
        if !is_positive(&b) || in_levi {
            continue;
        }
        dim += 1;
        let bb = form(&b, &b);
        num *= Q::from(2) * form(&lam, &b) / bb;
        den *= Q::from(2) * form(&rho, &b) / bb;
    }
    Q::from(factorial(dim)) * num / den
}
