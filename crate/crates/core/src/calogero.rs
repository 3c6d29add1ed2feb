//! Calogero-type potentials built from real roots.
//!
//! A potential is a list of [`PotentialTerm`]s `g/(f·q)²`. Two constructions
//! produce such lists: bounded Diophantine enumeration ([`vd_terms`]) and
//! Coxeter-orbit sweeps of representatives ([`vc_terms`]). [`match_terms`]
//! cross-references them exactly on root coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dynkin::CartanMatrix;
use crate::roots::{diophantine_check, enumerate_real_roots_in, LatticeEmbedding, RootVector};
use crate::special::{sin_pi, trigamma};
use crate::weyl::{apply_power, orbit, word_matrix, WeylWord};
use crate::{Error, Label, Result};

/// `coupling / (form·q)²` with `form` a covector on ambient coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTerm {
    form: Vec<BigRational>,
    coupling: f64,
    root: Option<RootVector>,
}

impl PotentialTerm {
    pub fn new(form: Vec<BigRational>, coupling: f64) -> Result<Self> {
        if form.iter().all(Zero::is_zero) {
            return Err(Error::PoleEncountered("form vanishes identically".into()));
        }
        Ok(PotentialTerm { form, coupling, root: None })
    }

    /// The term of a root: its embedding with the index lowered, so that
    /// `form·q = α·q`.
    pub fn from_root(root: RootVector, e: &LatticeEmbedding, coupling: f64) -> Result<Self> {
        let form = e.lower(&e.embed(&root)?)?;
        let mut t = Self::new(form, coupling)?;
        t.root = Some(root);
        Ok(t)
    }

    pub fn form(&self) -> &[BigRational] {
        &self.form
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn root(&self) -> Option<&RootVector> {
        self.root.as_ref()
    }

    pub fn negated(&self) -> Self {
        PotentialTerm {
            form: self.form.iter().map(|x| -x).collect(),
            coupling: self.coupling,
            root: self.root.as_ref().map(RootVector::neg),
        }
    }

    /// Form with its first nonzero coefficient made positive.
    pub fn canonical_form(&self) -> Vec<BigRational> {
        match self.form.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => self.form.iter().map(|x| -x).collect(),
            _ => self.form.clone(),
        }
    }

    /// Sign-insensitive identity of forms.
    pub fn same_form(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Canonical form as comma-separated coefficients, e.g. `1,0,-1,0,1,0,0`.
    pub fn form_label(&self) -> String {
        let mut s = String::new();
        for (i, x) in self.canonical_form().iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{x}"));
        }
        s
    }

    pub fn denominator(&self, q: &[f64]) -> Result<f64> {
        if q.len() != self.form.len() {
            return Err(Error::DimensionMismatch { expected: self.form.len(), found: q.len() });
        }
        Ok(self.form.iter().zip(q).map(|(f, x)| f.to_f64().unwrap_or(f64::NAN) * x).sum())
    }

    pub fn value(&self, q: &[f64]) -> Result<f64> {
        let d = self.denominator(q)?;
        if d == 0.0 {
            return Err(Error::PoleEncountered(format!("form ({}) vanishes", self.form_label())));
        }
        Ok(self.coupling / (d * d))
    }
}

/// `Σ_terms coupling/(form·q)²`.
pub fn evaluate(terms: &[PotentialTerm], q: &[f64]) -> Result<f64> {
    terms.iter().try_fold(0.0, |acc, t| Ok(acc + t.value(q)?))
}

/// `½ p·p` in the ambient metric.
pub fn kinetic(p: &[f64], e: &LatticeEmbedding) -> Result<f64> {
    Ok(0.5 * e.ambient_inner_f64(p, p)?)
}

/// Exact `½ p·p`.
pub fn kinetic_exact(p: &[BigRational], e: &LatticeEmbedding) -> Result<BigRational> {
    Ok(e.ambient_inner(p, p)? / BigRational::from_integer(BigInt::from(2)))
}

/// One term per real root inside `bounds`, deduplicated up to sign, in
/// enumeration order.
pub fn vd_terms(
    k: &CartanMatrix,
    e: &LatticeEmbedding,
    bounds: &[(i64, i64)],
    coupling: f64,
) -> Result<Vec<PotentialTerm>> {
    let roots = enumerate_real_roots_in(k, bounds)?;
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for r in roots {
        if seen.insert(r.canonical(), ()).is_none() {
            out.push(PotentialTerm::from_root(r, e, coupling)?);
        }
    }
    Ok(out)
}

/// A root `rep` whose orbit under the Coxeter-type element `word` enters the
/// potential with a common coupling.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitGenerator {
    pub rep: RootVector,
    pub word: WeylWord,
    pub coupling: f64,
}

impl OrbitGenerator {
    pub fn new(rep: RootVector, word: WeylWord, coupling: f64, k: &CartanMatrix) -> Result<Self> {
        word.validate(k)?;
        if rep.len() != k.rank() {
            return Err(Error::DimensionMismatch { expected: k.rank(), found: rep.len() });
        }
        if !diophantine_check(&rep, k) {
            return Err(Error::InvalidDiagram(format!("representative {rep} is not a real root")));
        }
        Ok(OrbitGenerator { rep, word, coupling })
    }

    /// `[(n, σⁿ rep)]` for `k_min ≤ n ≤ k_max`.
    pub fn orbit(&self, k: &CartanMatrix, k_min: i64, k_max: i64) -> Result<Vec<(i64, RootVector)>> {
        orbit(&word_matrix(&self.word, k)?, &self.rep, k_min, k_max)
    }
}

/// Orbit sweep of every generator, sign-deduplicated in generator order.
pub fn vc_terms(
    gens: &[OrbitGenerator],
    k: &CartanMatrix,
    e: &LatticeEmbedding,
    k_min: i64,
    k_max: i64,
) -> Result<Vec<PotentialTerm>> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for g in gens {
        for (_, r) in g.orbit(k, k_min, k_max)? {
            if seen.insert(r.canonical(), ()).is_none() {
                out.push(PotentialTerm::from_root(r, e, g.coupling)?);
            }
        }
    }
    Ok(out)
}

/// `σ_i^power(γ_orbit) = sign · root(term vd_index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchRow {
    pub vd_index: usize,
    pub root: RootVector,
    pub orbit: usize,
    pub power: i64,
    pub sign: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchTable {
    pub rows: Vec<MatchRow>,
    pub unmatched: Vec<usize>,
}

impl MatchTable {
    pub fn row_for(&self, root: &RootVector) -> Option<&MatchRow> {
        let c = root.canonical();
        self.rows.iter().find(|r| r.root.canonical() == c)
    }

    /// Number of distinct orbits used by the rows.
    pub fn orbits_used(&self) -> usize {
        let mut ids: Vec<usize> = self.rows.iter().map(|r| r.orbit).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }
}

/// Canonical root → (|k|, generator, k, sign); the smallest key wins.
type OrbitIndex = BTreeMap<RootVector, (u64, usize, i64, i8)>;

fn orbit_index(gens: &[OrbitGenerator], k: &CartanMatrix, window: i64) -> Result<OrbitIndex> {
    let mut index = OrbitIndex::new();
    for (i, g) in gens.iter().enumerate() {
        for (n, r) in g.orbit(k, -window, window)? {
            let c = r.canonical();
            let sign = if c == r { 1 } else { -1 };
            let key = (n.unsigned_abs(), i, n, sign);
            index.entry(c).and_modify(|e| *e = (*e).min(key)).or_insert(key);
        }
    }
    Ok(index)
}

/// Finds every V_D term inside the `|k| ≤ window` orbit of some generator.
/// Ties go to the smallest `|k|`, then the smallest generator index, then
/// the smaller `k`. Terms without a root are reported unmatched.
pub fn match_terms(
    vd: &[PotentialTerm],
    gens: &[OrbitGenerator],
    k: &CartanMatrix,
    window: i64,
) -> Result<MatchTable> {
    if window < 0 {
        return Err(Error::InvalidBounds { lo: -window, hi: window });
    }
    let index = orbit_index(gens, k, window)?;
    let mut table = MatchTable::default();
    for (j, t) in vd.iter().enumerate() {
        let hit = t.root().and_then(|r| {
            let c = r.canonical();
            let own = if &c == r { 1 } else { -1 };
            index.get(&c).map(|&(_, i, n, s)| MatchRow {
                vd_index: j,
                root: r.clone(),
                orbit: i,
                power: n,
                sign: s * own,
            })
        });
        match hit {
            Some(row) => table.rows.push(row),
            None => table.unmatched.push(j),
        }
    }
    Ok(table)
}

/// Greedy cover: each V_D term outside the `±`, `|k| ≤ window` orbits of
/// the representatives found so far becomes a new representative (sign
/// made canonical).
pub fn find_orbit_representatives(
    vd: &[PotentialTerm],
    word: &WeylWord,
    k: &CartanMatrix,
    window: i64,
    coupling: f64,
) -> Result<Vec<OrbitGenerator>> {
    let c = word_matrix(word, k)?;
    let mut covered = BTreeMap::new();
    let mut reps = Vec::new();
    for t in vd {
        let Some(r) = t.root() else { continue };
        let rc = r.canonical();
        if covered.contains_key(&rc) {
            continue;
        }
        for (_, v) in orbit(&c, &rc, -window, window)? {
            covered.insert(v.canonical(), ());
        }
        reps.push(OrbitGenerator::new(rc, word.clone(), coupling, k)?);
    }
    Ok(reps)
}

/// Prefixes `u` of the nine affine orbit families, in the order
/// `1, σ₀, σ₁, σ₁σ₀, σ₀σ₁, σ₀σ₁σ₀, σ₂σ₀, σ₂σ₁, σ₂σ₀σ₂`.
pub const AFFINE_PREFIXES: [&[Label]; 9] =
    [&[], &[0], &[1], &[1, 0], &[0, 1], &[0, 1, 0], &[2, 0], &[2, 1], &[2, 0, 2]];

/// The nine generators `{rep = u(α₂), word = u σ₀σ₁σ₂ u⁻¹}` whose orbits
/// make up the affine invariant potential. `k` must contain labels 0, 1, 2.
pub fn affine_orbit_family(k: &CartanMatrix, coupling: f64) -> Result<Vec<OrbitGenerator>> {
    let alpha2 = RootVector::simple(k.rank(), k.index_of(2)?);
    let sigma = WeylWord::new(vec![0, 1, 2]);
    AFFINE_PREFIXES
        .iter()
        .map(|u| {
            let u = WeylWord::new(u.to_vec());
            let rep = apply_power(&word_matrix(&u, k)?, 1, &alpha2)?;
            OrbitGenerator::new(rep, sigma.conjugate_by(&u), coupling, k)
        })
        .collect()
}

/// Names of the nine sine terms of the affine invariant potential.
pub const AFFINE_TERM_IDS: [&str; 9] =
    ["V12", "V13", "V23", "V125+", "V125-", "V135+", "V135-", "V235+", "V235-"];

fn check_len(q: &[f64], min: usize) -> Result<()> {
    if q.len() < min {
        return Err(Error::DimensionMismatch { expected: min, found: q.len() });
    }
    Ok(())
}

/// `(id, sin⁻²(π x/(3q₅)))` for each of the nine arguments `x`.
pub fn affine_potential_terms(q: &[f64]) -> Result<Vec<(&'static str, f64)>> {
    check_len(q, 5)?;
    let (q1, q2, q3, q5) = (q[0], q[1], q[2], q[4]);
    if q5 == 0.0 {
        return Err(Error::PoleEncountered("q5 = 0".into()));
    }
    let args = [
        q1 - q2,
        q1 - q3,
        q2 - q3,
        q1 - q2 + q5,
        q1 - q2 - q5,
        q1 - q3 + q5,
        q1 - q3 - q5,
        q2 - q3 + q5,
        q2 - q3 - q5,
    ];
    AFFINE_TERM_IDS
        .iter()
        .zip(args)
        .map(|(&id, x)| {
            let s = sin_pi(x / (3.0 * q5));
            if s == 0.0 {
                return Err(Error::PoleEncountered(format!("{id} at q = {q:?}")));
            }
            Ok((id, 1.0 / (s * s)))
        })
        .collect()
}

/// Closed form of the nine-orbit affine invariant potential,
/// `2π²g/(9q₅²) · Σ V`.
pub fn affine_invariant_potential(q: &[f64], g: f64) -> Result<f64> {
    let terms = affine_potential_terms(q)?;
    let q5 = q[4];
    Ok(2.0 * PI * PI * g / (9.0 * q5 * q5) * terms.iter().map(|t| t.1).sum::<f64>())
}

/// Closed form of the single orbit sum `Σ_n g/[σ_aⁿ(α₂)·q]²`.
pub fn affine_orbit_sum(q: &[f64], g: f64) -> Result<f64> {
    check_len(q, 5)?;
    let (q1, q2, q3, q5) = (q[0], q[1], q[2], q[4]);
    if q5 == 0.0 {
        return Err(Error::PoleEncountered("q5 = 0".into()));
    }
    let mut s = 0.0;
    for (id, x) in [("V23", q2 - q3), ("V135-", q1 - q3 - q5)] {
        let v = sin_pi(x / (3.0 * q5));
        if v == 0.0 {
            return Err(Error::PoleEncountered(format!("{id} at q = {q:?}")));
        }
        s += 1.0 / (v * v);
    }
    Ok(PI * PI * g / (9.0 * q5 * q5) * s)
}

/// One-index partial sums of the Lorentzian potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartialSumFamily {
    /// `(p,q,l,m,n) = (l, 1+l, l, l, l)`, `l ≥ 0`
    Family1,
    /// `(l, l, l, 1+l, 1+l)`, `l ≥ 0`
    Family2,
    /// `(k, 2k, 2k+1, k, k)`, `k ≥ 0`
    V1,
    /// `(−1−k, −2−2k, −2k−1, −1−k, −1−k)`, `k ≥ 0`
    V2,
    /// `V1 + V2` through `Ψ(x) + Ψ(1−x) = π²/sin²(πx)`
    Sum12,
}

impl PartialSumFamily {
    pub const ALL: [PartialSumFamily; 5] = [Self::Family1, Self::Family2, Self::V1, Self::V2, Self::Sum12];

    pub fn name(self) -> &'static str {
        match self {
            Self::Family1 => "partial-1",
            Self::Family2 => "partial-2",
            Self::V1 => "partial-v1",
            Self::V2 => "partial-v2",
            Self::Sum12 => "partial-v1v2",
        }
    }

    /// The `j`-th root `(p,q,l,m,n)` of the family; `None` for `Sum12`.
    pub fn root(self, j: i64) -> Option<RootVector> {
        let c = match self {
            Self::Family1 => [j, 1 + j, j, j, j],
            Self::Family2 => [j, j, j, 1 + j, 1 + j],
            Self::V1 => [j, 2 * j, 2 * j + 1, j, j],
            Self::V2 => [-1 - j, -2 - 2 * j, -2 * j - 1, -1 - j, -1 - j],
            Self::Sum12 => return None,
        };
        Some(RootVector::from_i64(&c))
    }
}

fn psi_term(g: f64, scale: f64, x: f64, what: &str) -> Result<f64> {
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::PoleEncountered(format!("{what}: vanishing denominator")));
    }
    Ok(g * trigamma(x).map_err(|_| Error::PoleEncountered(format!("{what}: trigamma pole at {x}")))? / (scale * scale))
}

/// Closed forms of the partial sums on the seven ambient coordinates.
///
/// `V1`, `V2` and `Sum12` use the denominator
/// `a(q₁−q₃+2q₄+q₅+q₆) + (−q₁+q₃−7q₅)q₇` with `a = q₁−q₃+q₅`, which agrees
/// with the raw sums only on `q₇ = 0`; see the crate README.
pub fn partial_sum_potential(q: &[f64], family: PartialSumFamily, g: f64) -> Result<f64> {
    if q.len() != 7 {
        return Err(Error::DimensionMismatch { expected: 7, found: q.len() });
    }
    let (q1, q2, q3, q4, q5, q6, q7) = (q[0], q[1], q[2], q[3], q[4], q[5], q[6]);
    let _ = q2;
    let b = q4 + q5 + q6 - q7;
    let a = q1 - q3 + q5;
    let d = a * (q1 - q3 + 2.0 * q4 + q5 + q6) + (-q1 + q3 - 7.0 * q5) * q7;
    let name = family.name();
    match family {
        PartialSumFamily::Family1 => psi_term(g, b, (q4 - q5) / b, name),
        PartialSumFamily::Family2 => psi_term(g, b, (q3 - q1) / b, name),
        PartialSumFamily::V1 | PartialSumFamily::V2 | PartialSumFamily::Sum12 => {
            if d == 0.0 || a == 0.0 {
                return Err(Error::PoleEncountered(format!("{name}: vanishing denominator")));
            }
            let x = a * a / d;
            // a²/d² · Ψ(x) = Ψ(x)/(d/a)²
            let scale = d / a;
            match family {
                PartialSumFamily::V1 => psi_term(g, scale, x, name),
                PartialSumFamily::V2 => psi_term(g, scale, 1.0 - x, name),
                _ => {
                    let s = sin_pi(x);
                    if s == 0.0 {
                        return Err(Error::PoleEncountered(format!("{name}: sine vanishes at {x}")));
                    }
                    Ok(g * PI * PI / (scale * scale * s * s))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{build_extended_a, DynkinDiagram};
    use crate::weyl::ambient_reflect_f64;

    fn setup() -> (DynkinDiagram, CartanMatrix, LatticeEmbedding) {
        let d = build_extended_a(2, 2).unwrap();
        let k = d.cartan();
        let e = LatticeEmbedding::for_extended_a(&d).unwrap();
        (d, k, e)
    }

    fn r(x: &[i64]) -> RootVector {
        RootVector::from_i64(x)
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn kinetic_values() {
        let (_, _, e) = setup();
        assert_eq!(kinetic(&[0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0], &e).unwrap(), -1.0);
        assert_eq!(kinetic(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], &e).unwrap(), 0.5);
        assert!(kinetic(&[1.0], &e).is_err());
        let p: Vec<BigRational> = [3, -1, 4, 1, -5, 9, 2].iter().map(|&x| q(x)).collect();
        assert_eq!(kinetic_exact(&p, &e).unwrap(), q(9 + 1 + 16) / q(2) - q(-5 + 18));
    }

    #[test]
    fn term_forms() {
        let (_, _, e) = setup();
        let t = PotentialTerm::from_root(r(&[0, 1, 0, 0, 0]), &e, 1.0).unwrap();
        // α₋₁·q = q₅ − q₄
        assert_eq!(t.form(), &[q(0), q(0), q(0), q(-1), q(1), q(0), q(0)][..]);
        assert_eq!(t.form_label(), "0,0,0,1,-1,0,0");
        let a0 = PotentialTerm::from_root(r(&[0, 0, 1, 0, 0]), &e, 2.0).unwrap();
        assert_eq!(a0.form_label(), "1,0,-1,0,1,0,0");
        let x = [0.3, 0.7, 1.9, 0.41, 1.23, 0.1, 0.2];
        let d = 0.3 - 1.9 + 1.23;
        assert!((a0.value(&x).unwrap() - 2.0 / (d * d)).abs() < 1e-12);
        assert_eq!(a0.value(&x).unwrap(), a0.negated().value(&x).unwrap());
        assert!(a0.same_form(&a0.negated()));
        assert!(matches!(t.value(&[0.0; 7]), Err(Error::PoleEncountered(_))));
        assert!(PotentialTerm::new(vec![q(0); 7], 1.0).is_err());
    }

    #[test]
    fn diophantine_slices() {
        let (_, k, e) = setup();
        let affine = vd_terms(&k, &e, &[(0, 0), (0, 0), (0, 5), (0, 5), (0, 5)], 1.0).unwrap();
        assert_eq!(affine.len(), 30);
        assert!(vd_terms(&k, &e, &[(0, 0); 5], 1.0).unwrap().is_empty());
        let hyper = vd_terms(&k, &e, &[(0, 0), (0, 5), (0, 5), (0, 5), (0, 5)], 1.0).unwrap();
        let am1 = hyper.iter().find(|t| t.root() == Some(&r(&[0, 1, 0, 0, 0]))).unwrap();
        assert_eq!(am1.form_label(), "0,0,0,1,-1,0,0");
        let signed = vd_terms(&k, &e, &[(-1, 1); 5], 1.0).unwrap();
        for (i, a) in signed.iter().enumerate() {
            assert!(signed[i + 1..].iter().all(|b| !a.same_form(b)));
        }
    }

    #[test]
    fn affine_matches_displayed_assignments() {
        let (_, k, e) = setup();
        let gens = affine_orbit_family(&k, 1.0).unwrap();
        assert_eq!(gens[0].rep, r(&[0, 0, 0, 0, 1]));
        let vd = vd_terms(&k, &e, &[(0, 0), (0, 0), (0, 5), (0, 5), (0, 5)], 1.0).unwrap();
        let table = match_terms(&vd, &gens, &k, 5).unwrap();
        assert!(table.unmatched.is_empty());
        assert_eq!(table.rows.len(), 30);
        // (l, m, n) → (v_i, n)
        let displayed: [((i64, i64, i64), usize, i64); 29] = [
            ((0, 0, 1), 1, 0),
            ((0, 1, 0), 8, 0),
            ((0, 1, 1), 3, 0),
            ((1, 0, 0), 7, 0),
            ((1, 0, 1), 2, 0),
            ((1, 1, 0), 9, 1),
            ((1, 1, 2), 3, -1),
            ((1, 2, 1), 4, 0),
            ((2, 1, 1), 5, 0),
            ((2, 1, 2), 5, -1),
            ((2, 2, 1), 6, 0),
            ((2, 2, 3), 9, -1),
            ((2, 3, 2), 6, -1),
            ((2, 3, 3), 7, 2),
            ((3, 2, 2), 3, 2),
            ((3, 2, 3), 8, 2),
            ((3, 3, 2), 1, 2),
            ((3, 3, 4), 1, -2),
            ((3, 4, 3), 8, -2),
            ((3, 4, 4), 3, -2),
            ((4, 3, 3), 9, 2),
            ((4, 3, 4), 2, -2),
            ((4, 4, 3), 9, 3),
            ((4, 4, 5), 3, -3),
            ((4, 5, 4), 5, 3),
            ((4, 5, 5), 1, -3),
            ((5, 4, 4), 1, 3),
            ((5, 4, 5), 5, -3),
            ((5, 5, 4), 3, 3),
        ];
        for ((l, m, n), i, p) in displayed {
            let g = &gens[i - 1];
            let v = apply_power(&word_matrix(&g.word, &k).unwrap(), p, &g.rep).unwrap();
            assert_eq!(v.canonical(), r(&[0, 0, l, m, n]), "v{l}{m}{n}");
        }
        for row in &table.rows {
            let g = &gens[row.orbit];
            let c = word_matrix(&g.word, &k).unwrap();
            let v = apply_power(&c, row.power, &g.rep).unwrap();
            assert_eq!(if row.sign > 0 { v } else { v.neg() }, row.root);
        }
        assert!(match_terms(&[], &gens, &k, 5).unwrap().rows.is_empty());
    }

    #[test]
    fn hyperbolic_cover_and_spot_row() {
        let (_, k, e) = setup();
        let vd = vd_terms(&k, &e, &[(0, 0), (0, 5), (0, 5), (0, 5), (0, 5)], 1.0).unwrap();
        let word = WeylWord::new(vec![-1, 0, 1, 2]);
        let reps = find_orbit_representatives(&vd, &word, &k, 5, 1.0).unwrap();
        let table = match_terms(&vd, &reps, &k, 5).unwrap();
        assert!(table.unmatched.is_empty());
        let a0 = table.row_for(&r(&[0, 0, 1, 0, 0])).unwrap();
        let v1112 = table.row_for(&r(&[0, 1, 1, 1, 2])).unwrap();
        assert_eq!(a0.orbit, v1112.orbit);
        assert_eq!(v1112.power - a0.power, -2);
        let single = find_orbit_representatives(&vd[..1], &word, &k, 5, 1.0).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn orbit_terms_are_real_roots() {
        let (_, k, e) = setup();
        let gens = affine_orbit_family(&k, 1.0).unwrap();
        let terms = vc_terms(&gens, &k, &e, -4, 4).unwrap();
        assert!(!terms.is_empty());
        for t in &terms {
            assert!(diophantine_check(t.root().unwrap(), &k));
        }
        assert!(OrbitGenerator::new(r(&[1, 0, 1, 0, 0]), WeylWord::new(vec![0]), 1.0, &k).is_err());
    }

    fn orbit_forms(k: &CartanMatrix, e: &LatticeEmbedding, g: &OrbitGenerator, n: i64) -> Vec<Vec<f64>> {
        g.orbit(k, -n, n)
            .unwrap()
            .into_iter()
            .map(|(_, r)| {
                PotentialTerm::from_root(r, e, 1.0)
                    .unwrap()
                    .form()
                    .iter()
                    .map(|x| x.to_f64().unwrap())
                    .collect()
            })
            .collect()
    }

    fn raw_sum(forms: &[Vec<f64>], q: &[f64], n: usize) -> f64 {
        let mid = forms.len() / 2;
        forms[mid - n..=mid + n]
            .iter()
            .map(|f| {
                let d: f64 = f.iter().zip(q).map(|(a, b)| a * b).sum();
                1.0 / (d * d)
            })
            .sum()
    }

    #[test]
    fn single_orbit_sum_converges() {
        let (_, k, e) = setup();
        let gens = affine_orbit_family(&k, 1.0).unwrap();
        let forms = orbit_forms(&k, &e, &gens[0], 800);
        let q = [0.3, 0.7, 1.9, 0.41, 1.23, 0.0, 0.0];
        let exact = affine_orbit_sum(&q, 1.0).unwrap();
        // cutoff N keeps |n| < N; with |n| ≤ N the tail ratio is 2(1 − 1/2N)/(1 − 1/4N) < 2
        let mut last = f64::INFINITY;
        for n in [50, 100, 200, 400, 800] {
            let err = (raw_sum(&forms, &q, n - 1) - exact).abs();
            assert!(err <= last / 2.0, "n = {n}");
            last = err;
        }
        let rich = 2.0 * raw_sum(&forms, &q, 800) - raw_sum(&forms, &q, 400);
        assert!((rich - exact).abs() < 1e-6 * exact);
    }

    #[test]
    fn affine_closed_form() {
        let (_, k, e) = setup();
        let q = [0.3, 0.7, 1.9, 0.41, 1.23, 0.0, 0.0];
        let gens = affine_orbit_family(&k, 1.0).unwrap();
        let n = 1000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for g in &gens {
            let f = orbit_forms(&k, &e, g, n as i64);
            s1 += raw_sum(&f, &q, n / 2);
            s2 += raw_sum(&f, &q, n);
        }
        let exact = affine_invariant_potential(&q, 1.0).unwrap();
        assert!(((2.0 * s2 - s1) - exact).abs() < 1e-6 * exact);
        for i in [0, 1, 2] {
            let qi = ambient_reflect_f64(i, &q, &e).unwrap();
            let v = affine_invariant_potential(&qi, 1.0).unwrap();
            assert!((v - exact).abs() < 1e-10 * exact, "σ{i}");
        }
        let big = [0.3, 0.7, 1.9, 0.0, 1e6];
        let a2 = 2.0 * (1.0 / 0.16 + 1.0 / 2.56 + 1.0 / 1.44);
        assert!((affine_invariant_potential(&big, 1.0).unwrap() - a2).abs() < 1e-6 * a2);
        assert_eq!(affine_invariant_potential(&q, 0.0).unwrap(), 0.0);
        assert!(matches!(
            affine_invariant_potential(&[0.3, 0.3, 1.0, 0.0, 1.0], 1.0),
            Err(Error::PoleEncountered(m)) if m.starts_with("V12")
        ));
        assert!(affine_invariant_potential(&[0.3, 0.7, 1.0, 0.0, 0.0], 1.0).is_err());
    }

    fn partial_raw(family: PartialSumFamily, e: &LatticeEmbedding, q: &[f64], n: i64) -> f64 {
        (0..n)
            .map(|j| {
                let t = PotentialTerm::from_root(family.root(j).unwrap(), e, 1.0).unwrap();
                t.value(q).unwrap()
            })
            .sum()
    }

    fn richardson(family: PartialSumFamily, e: &LatticeEmbedding, q: &[f64], n: i64) -> f64 {
        2.0 * partial_raw(family, e, q, 2 * n) - partial_raw(family, e, q, n)
    }

    #[test]
    fn partial_sums() {
        let (_, k, e) = setup();
        for f in [PartialSumFamily::Family1, PartialSumFamily::Family2, PartialSumFamily::V1, PartialSumFamily::V2] {
            for j in 0..6 {
                assert!(diophantine_check(&f.root(j).unwrap(), &k), "{f:?} {j}");
            }
        }
        let q = [0.3, 0.7, 1.9, 0.41, 1.23, 0.37, 0.52];
        for f in [PartialSumFamily::Family1, PartialSumFamily::Family2] {
            let v = partial_sum_potential(&q, f, 1.0).unwrap();
            assert!((richardson(f, &e, &q, 20000) - v).abs() < 1e-6 * v, "{f:?}");
            assert_eq!(partial_sum_potential(&q, f, 0.0).unwrap(), 0.0);
        }
        // the displayed V₁, V₂ agree with the raw sums only on q₇ = 0
        let q0 = [0.3, 0.7, 1.9, 0.41, 1.23, 0.37, 0.0];
        for f in [PartialSumFamily::V1, PartialSumFamily::V2] {
            let v = partial_sum_potential(&q0, f, 1.0).unwrap();
            assert!((richardson(f, &e, &q0, 20000) - v).abs() < 1e-6 * v, "{f:?}");
            let w = partial_sum_potential(&q, f, 1.0).unwrap();
            assert!((richardson(f, &e, &q, 20000) - w).abs() > 1e-2 * w, "{f:?}");
        }
        let s = partial_sum_potential(&q, PartialSumFamily::V1, 1.0).unwrap()
            + partial_sum_potential(&q, PartialSumFamily::V2, 1.0).unwrap();
        let s12 = partial_sum_potential(&q, PartialSumFamily::Sum12, 1.0).unwrap();
        assert!((s - s12).abs() < 1e-10 * s12);
        assert!(partial_sum_potential(&[0.0; 7], PartialSumFamily::Family1, 1.0).is_err());
        assert!(partial_sum_potential(&q[..5], PartialSumFamily::V1, 1.0).is_err());
    }
}
