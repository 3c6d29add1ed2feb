//! Simply-laced Dynkin diagrams, in particular the extended A-series
//! `(A_n)_{-m}`: an affine `(n+1)`-cycle on nodes `0..=n` with a chain
//! `-1, …, -m` hanging off node 0.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;

use crate::linalg::IntMatrix;
use crate::{Error, Label, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    labels: Vec<Label>,
    edges: Vec<(Label, Label)>,
    extended: Option<(usize, usize)>,
}

impl DynkinDiagram {
    /// Arbitrary simply-laced diagram. Labels must be distinct, edges must
    /// join two different existing labels, and each edge may appear once.
    pub fn new(labels: Vec<Label>, edges: Vec<(Label, Label)>) -> Result<Self> {
        let set: BTreeSet<Label> = labels.iter().copied().collect();
        if set.len() != labels.len() {
            return Err(Error::InvalidDiagram(format!("duplicate label in {labels:?}")));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::InvalidDiagram(format!("self edge at {a}")));
            }
            if !set.contains(&a) || !set.contains(&b) {
                return Err(Error::InvalidDiagram(format!("edge ({a}, {b}) leaves the diagram")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidDiagram(format!("edge ({a}, {b}) repeated")));
            }
        }
        Ok(DynkinDiagram { labels, edges, extended: None })
    }

    /// `(A_n)_{-m}` with node order `-m, …, -1, 0, 1, …, n`.
    pub fn extended_a(n: usize, m: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedRank { n });
        }
        let (ni, mi) = (n as Label, m as Label);
        let labels: Vec<Label> = (-mi..=ni).collect();
        let mut edges: Vec<(Label, Label)> = (-mi..0).map(|k| (k, k + 1)).collect();
        edges.extend((0..ni).map(|k| (k, k + 1)));
        edges.push((0, ni));
        let mut d = Self::new(labels, edges)?;
        d.extended = Some((n, m));
        Ok(d)
    }

    /// Finite `A_n` on labels `1..=n`.
    pub fn finite_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedRank { n });
        }
        let ni = n as Label;
        Self::new((1..=ni).collect(), (1..ni).map(|k| (k, k + 1)).collect())
    }

    /// Recovers the diagram from a simply-laced Cartan matrix.
    pub fn from_cartan(k: &CartanMatrix) -> Result<Self> {
        let r = k.rank();
        let mut edges = Vec::new();
        for i in 0..r {
            if k.at(i, i) != 2 {
                return Err(Error::InvalidDiagram(format!("diagonal entry {} at {i}", k.at(i, i))));
            }
            for j in i + 1..r {
                match (k.at(i, j), k.at(j, i)) {
                    (0, 0) => {}
                    (-1, -1) => edges.push((k.labels[i], k.labels[j])),
                    (a, b) => {
                        return Err(Error::InvalidDiagram(format!("entries {a}, {b} at ({i}, {j})")))
                    }
                }
            }
        }
        Self::new(k.labels.clone(), edges)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn edges(&self) -> &[(Label, Label)] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `(n, m)` when built by [`DynkinDiagram::extended_a`].
    pub fn extended_params(&self) -> Option<(usize, usize)> {
        self.extended
    }

    pub fn index_of(&self, label: Label) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or(Error::UnknownLabel(label))
    }

    pub fn adjacent(&self, a: Label, b: Label) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn neighbours(&self, label: Label) -> impl Iterator<Item = Label> + '_ {
        self.edges.iter().filter_map(move |&(x, y)| {
            if x == label {
                Some(y)
            } else if y == label {
                Some(x)
            } else {
                None
            }
        })
    }

    pub fn cartan(&self) -> CartanMatrix {
        let r = self.rank();
        let mut m = IntMatrix::zeros(r, r);
        for i in 0..r {
            m.set(i, i, BigInt::from(2));
        }
        for &(a, b) in &self.edges {
            let (i, j) = (self.index_of(a).unwrap(), self.index_of(b).unwrap());
            m.set(i, j, BigInt::from(-1));
            m.set(j, i, BigInt::from(-1));
        }
        CartanMatrix { labels: self.labels.clone(), mat: m }
    }
}

pub fn build_extended_a(n: usize, m: usize) -> Result<DynkinDiagram> {
    DynkinDiagram::extended_a(n, m)
}

/// Symmetric integer Gram matrix of the simple roots, indexed by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    labels: Vec<Label>,
    mat: IntMatrix,
}

impl CartanMatrix {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn index_of(&self, label: Label) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or(Error::UnknownLabel(label))
    }

    /// Entry at positions (not labels).
    pub fn at(&self, i: usize, j: usize) -> i64 {
        i64::try_from(self.mat.get(i, j)).expect("Cartan entries are small")
    }

    pub fn entry(&self, a: Label, b: Label) -> Result<i64> {
        Ok(self.at(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| self.at(i, j)).collect()).collect()
    }

    fn to_dmatrix(&self) -> DMatrix<f64> {
        let r = self.rank();
        DMatrix::from_fn(r, r, |i, j| self.at(i, j) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Minus,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicolouration {
    colours: BTreeMap<Label, Colour>,
}

impl Bicolouration {
    pub fn colour(&self, label: Label) -> Option<Colour> {
        self.colours.get(&label).copied()
    }

    /// Labels of the given colour, ascending.
    pub fn of(&self, colour: Colour) -> Vec<Label> {
        self.colours.iter().filter(|(_, &c)| c == colour).map(|(&l, _)| l).collect()
    }

    pub fn minus(&self) -> Vec<Label> {
        self.of(Colour::Minus)
    }

    pub fn plus(&self) -> Vec<Label> {
        self.of(Colour::Plus)
    }
}

/// Proper two-colouring, or `None` if the diagram has an odd cycle. In every
/// connected component the smallest label is coloured minus.
pub fn bicolour(d: &DynkinDiagram) -> Option<Bicolouration> {
    let mut colours = BTreeMap::new();
    let mut order = d.labels.clone();
    order.sort_unstable();
    for start in order {
        if colours.contains_key(&start) {
            continue;
        }
        colours.insert(start, Colour::Minus);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let other = match colours[&v] {
                Colour::Minus => Colour::Plus,
                Colour::Plus => Colour::Minus,
            };
            for w in d.neighbours(v) {
                match colours.get(&w) {
                    None => {
                        colours.insert(w, other);
                        queue.push_back(w);
                    }
                    Some(&c) if c != other => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Bicolouration { colours })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit vector in label order, first significant component positive.
    pub vector: Vec<f64>,
}

/// All eigenpairs of the Cartan matrix, ascending by eigenvalue.
pub fn cartan_eigen(k: &CartanMatrix) -> Vec<EigenPair> {
    let eig = k.to_dmatrix().symmetric_eigen();
    let mut pairs: Vec<EigenPair> = (0..k.rank())
        .map(|c| {
            let mut vector: Vec<f64> = eig.eigenvectors.column(c).iter().copied().collect();
            if vector.iter().find(|x| x.abs() > 1e-9).is_some_and(|&x| x < 0.0) {
                vector.iter_mut().for_each(|x| *x = -*x);
            }
            EigenPair { value: eig.eigenvalues[c], vector }
        })
        .collect();
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value));
    pairs
}

/// `‖K v − λ v‖₂`
pub fn eigen_residual(k: &CartanMatrix, pair: &EigenPair) -> f64 {
    let r = k.rank();
    let s: f64 = (0..r)
        .map(|i| {
            let kv: f64 = (0..r).map(|j| k.at(i, j) as f64 * pair.vector[j]).sum();
            let d = kv - pair.value * pair.vector[i];
            d * d
        })
        .sum();
    libm::sqrt(s)
}

pub fn negative_eigenvalue_count(k: &CartanMatrix) -> usize {
    cartan_eigen(k).iter().filter(|p| p.value < -1e-9).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn a2m2_cartan_matches_display() {
        let k = build_extended_a(2, 2).unwrap().cartan();
        assert_eq!(
            k.to_i64_rows(),
            vec![
                vec![2, -1, 0, 0, 0],
                vec![-1, 2, -1, 0, 0],
                vec![0, -1, 2, -1, -1],
                vec![0, 0, -1, 2, -1],
                vec![0, 0, -1, -1, 2],
            ]
        );
    }

    #[test]
    fn a3m2_cartan_matches_display() {
        let k = build_extended_a(3, 2).unwrap().cartan();
        assert_eq!(
            k.to_i64_rows(),
            vec![
                vec![2, -1, 0, 0, 0, 0],
                vec![-1, 2, -1, 0, 0, 0],
                vec![0, -1, 2, -1, 0, -1],
                vec![0, 0, -1, 2, -1, 0],
                vec![0, 0, 0, -1, 2, -1],
                vec![0, 0, -1, 0, -1, 2],
            ]
        );
    }

    #[test]
    fn affine_a2_is_a_triangle() {
        let k = build_extended_a(2, 0).unwrap().cartan();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k.at(i, j), if i == j { 2 } else { -1 });
            }
            assert_eq!((0..3).map(|j| k.at(i, j)).sum::<i64>(), 0);
        }
    }

    #[test]
    fn rejects_low_rank_and_bad_input() {
        assert_eq!(build_extended_a(1, 0), Err(Error::UnsupportedRank { n: 1 }));
        assert!(DynkinDiagram::new(vec![1, 1], vec![]).is_err());
        assert!(DynkinDiagram::new(vec![1, 2], vec![(1, 3)]).is_err());
        assert!(DynkinDiagram::new(vec![1, 2], vec![(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn bicolourations() {
        assert!(bicolour(&build_extended_a(2, 2).unwrap()).is_none());
        let b = bicolour(&build_extended_a(3, 2).unwrap()).unwrap();
        assert_eq!(b.minus(), vec![-2, 0, 2]);
        assert_eq!(b.plus(), vec![-1, 1, 3]);
        let p = bicolour(&DynkinDiagram::new(vec![5, 7], vec![(5, 7)]).unwrap()).unwrap();
        assert_eq!(p.colour(5), Some(Colour::Minus));
        assert_eq!(p.colour(7), Some(Colour::Plus));
        for m in 0..=3 {
            assert!(bicolour(&build_extended_a(2, m).unwrap()).is_none());
            assert!(bicolour(&build_extended_a(3, m).unwrap()).is_some());
        }
    }

    #[test]
    fn a2m2_eigenvalues() {
        let k = build_extended_a(2, 2).unwrap().cartan();
        let eig = cartan_eigen(&k);
        assert_eq!(eig.len(), 5);
        for p in &eig {
            assert!(eigen_residual(&k, p) <= 1e-9);
        }
        assert!(eig.windows(2).all(|w| w[0].value <= w[1].value));
        let lambda = libm::atan(libm::sqrt(37.0 / 3.0) / 3.0) / 3.0;
        let neg = 2.0 - 4.0 / libm::sqrt(3.0) * libm::cos(lambda);
        assert!(neg < 0.0);
        assert!((eig[0].value - neg).abs() < 1e-9);
        assert_eq!(negative_eigenvalue_count(&k), 1);
        for target in [1.0, 3.0] {
            assert!(eig.iter().any(|p| (p.value - target).abs() < 1e-9));
        }
        let s = libm::sin(lambda);
        let c = libm::cos(lambda);
        for target in [2.0 + 2.0 / libm::sqrt(3.0) * c + 2.0 * s, 2.0 + 2.0 / libm::sqrt(3.0) * c - 2.0 * s] {
            assert!(eig.iter().any(|p| (p.value - target).abs() < 1e-9));
        }
    }

    #[test]
    fn finite_a2_eigenvalues() {
        let k = DynkinDiagram::finite_a(2).unwrap().cartan();
        let eig = cartan_eigen(&k);
        assert!((eig[0].value - 1.0).abs() < 1e-12);
        assert!((eig[1].value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn lorentzian_signature() {
        for (n, m) in [(2, 2), (3, 2)] {
            assert_eq!(negative_eigenvalue_count(&build_extended_a(n, m).unwrap().cartan()), 1);
        }
    }
}
