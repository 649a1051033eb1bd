//! Permutations of point labels and signed alternation sums.

use std::fmt;

/// `σ` as the image list: `σ(i) = self.0[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Panics unless `images` is a permutation of 0..n.
    pub fn new(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    /// Product of disjoint-or-not cycles, applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut p = Perm::identity(n);
        for c in cycles.iter().rev() {
            let mut q = Perm::identity(n);
            for k in 0..c.len() {
                q.0[c[k]] = c[(k + 1) % c.len()];
            }
            p = q.compose(&p);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn sign(&self) -> i64 {
        parity_sign(&self.0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", s.join(""))
    }
}

/// Sign of the permutation that sorts a list of distinct items; 0 on repeats.
pub fn parity_sign<T: Ord>(items: &[T]) -> i64 {
    let mut sign = 1;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            match items[i].cmp(&items[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// All of Sₙ in lexicographic order of image lists.
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(cur.clone()));
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Sym(A) × Sym(B) acting on disjoint label sets inside Sₙ.
pub fn product_subgroup(n: usize, a: &[usize], b: &[usize]) -> Vec<Perm> {
    let mut out = Vec::new();
    for pa in symmetric_group(a.len()) {
        for pb in symmetric_group(b.len()) {
            let mut p = Perm::identity(n);
            for (k, &x) in a.iter().enumerate() {
                p.0[x] = a[pa.0[k]];
            }
            for (k, &x) in b.iter().enumerate() {
                p.0[x] = b[pb.0[k]];
            }
            out.push(p);
        }
    }
    out
}

/// Powers of one permutation.
pub fn cyclic_group(gen: &Perm) -> Vec<Perm> {
    let mut out = vec![Perm::identity(gen.len())];
    let mut cur = gen.clone();
    while cur != out[0] {
        out.push(cur.clone());
        cur = gen.compose(&cur);
    }
    out
}

/// Unnormalized Σ sign(σ)·f(σ); no division by the group order.
pub fn alternate<T, E>(
    perms: &[Perm],
    mut f: impl FnMut(&Perm) -> Result<T, E>,
    mut acc: impl FnMut(i64, T),
) -> Result<(), E> {
    for p in perms {
        let v = f(p)?;
        acc(p.sign(), v);
    }
    Ok(())
}
