//! Minors, determinantal and Fitting ideals, and the identities among
//! minors used by the linkage constructions.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dim::Cokernel;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::module::Submodule;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};

/// Memoized Laplace expansion over row/column bitmasks of one matrix.
struct Minors<'a> {
    m: &'a PolyMatrix,
    memo: HashMap<(u64, u64), Polynomial>,
}

impl<'a> Minors<'a> {
    fn new(m: &'a PolyMatrix) -> Minors<'a> {
        assert!(m.nrows() <= 64 && m.ncols() <= 64, "matrices are limited to 64 rows and columns");
        Minors { m, memo: HashMap::new() }
    }

    fn det(&mut self, rows: u64, cols: u64) -> Polynomial {
        let ring = self.m.ring();
        if rows == 0 {
            return Polynomial::one(ring);
        }
        if rows.count_ones() == 1 {
            return self.m.get(rows.trailing_zeros() as usize, cols.trailing_zeros() as usize).clone();
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let row_list = bits(rows);
        let col_list = bits(cols);
        // expand along the sparsest row
        let (pos_r, &r) = row_list
            .iter()
            .enumerate()
            .min_by_key(|(_, &r)| col_list.iter().filter(|&&c| !self.m.get(r, c).is_zero()).count())
            .expect("nonempty");
        let mut acc = Polynomial::zero(ring);
        for (pos_c, &c) in col_list.iter().enumerate() {
            let e = self.m.get(r, c).clone();
            if e.is_zero() {
                continue;
            }
            let sub = self.det(rows & !(1 << r), cols & !(1 << c));
            if sub.is_zero() {
                continue;
            }
            let term = &e * &sub;
            acc = if (pos_r + pos_c) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

fn check_indices(idx: &[usize], bound: usize) -> Result<()> {
    for (n, &i) in idx.iter().enumerate() {
        if i >= bound {
            return Err(Error::IndexOutOfRange { index: i, bound });
        }
        if n > 0 && idx[n - 1] >= i {
            return Err(Error::Invalid(format!("indices {idx:?} are not strictly increasing")));
        }
    }
    Ok(())
}

/// Determinant of the submatrix on strictly increasing `rows` and `cols`.
pub fn minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    if rows.len() != cols.len() {
        return Err(Error::NonSquareSelection(rows.len(), cols.len()));
    }
    check_indices(rows, m.nrows())?;
    check_indices(cols, m.ncols())?;
    Ok(Minors::new(m).det(mask(rows), mask(cols)))
}

/// Determinant with rows taken in the given (possibly unsorted) order.
fn ordered_minor(cache: &mut Minors<'_>, rows: &[usize], cols: &[usize]) -> Polynomial {
    let mut sorted = rows.to_vec();
    let mut sign = false;
    // bubble sort to track the permutation parity
    for i in 0..sorted.len() {
        for j in 0..sorted.len() - 1 - i {
            if sorted[j] > sorted[j + 1] {
                sorted.swap(j, j + 1);
                sign = !sign;
            }
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Polynomial::zero(cache.m.ring());
    }
    let d = cache.det(mask(&sorted), mask(cols));
    if sign {
        -&d
    } else {
        d
    }
}

pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquareSelection(m.nrows(), m.ncols()));
    }
    let all: Vec<usize> = (0..m.nrows()).collect();
    minor(m, &all, &all)
}

/// All strictly increasing `k`-subsets of `0..n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ideal of `q x q` minors, `1 <= q <= min(rows, cols)`.
pub fn minors_ideal(m: &PolyMatrix, q: usize) -> Result<Ideal> {
    if q == 0 || q > m.nrows().min(m.ncols()) {
        return Err(Error::BadSize { q, rows: m.nrows(), cols: m.ncols() });
    }
    let mut cache = Minors::new(m);
    let mut gens = Vec::new();
    for r in subsets(m.nrows(), q) {
        for c in subsets(m.ncols(), q) {
            gens.push(cache.det(mask(&r), mask(&c)));
        }
    }
    Ideal::new(m.ring(), gens)
}

/// `I_q(m)` extended by the conventions `I_q = (1)` for `q <= 0` and
/// `I_q = (0)` beyond the matrix size.
pub fn minors_ideal_ext(m: &PolyMatrix, q: i64) -> Result<Ideal> {
    if q <= 0 {
        return Ok(Ideal::unit(m.ring()));
    }
    if q as usize > m.nrows().min(m.ncols()) {
        return Ok(Ideal::zero(m.ring()));
    }
    minors_ideal(m, q as usize)
}

/// A module given by generators (one per row) and relations (columns).
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    labels: Vec<String>,
    relations: PolyMatrix,
}

impl ModulePresentation {
    pub fn new(labels: Vec<String>, relations: PolyMatrix) -> Result<ModulePresentation> {
        if labels.len() != relations.nrows() {
            return Err(Error::LengthMismatch(labels.len(), relations.nrows()));
        }
        Ok(ModulePresentation { labels, relations })
    }

    /// Generators named `g0, g1, ...`.
    pub fn unlabeled(relations: PolyMatrix) -> ModulePresentation {
        let labels = (0..relations.nrows()).map(|i| format!("g{i}")).collect();
        ModulePresentation { labels, relations }
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    pub fn ngens(&self) -> usize {
        self.labels.len()
    }

    /// Drops generators (rows) listed in `rows`.
    pub fn drop_generators(&self, rows: &[usize]) -> ModulePresentation {
        let keep: Vec<usize> = (0..self.ngens()).filter(|i| !rows.contains(i)).collect();
        ModulePresentation {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            relations: self.relations.select_rows(&keep),
        }
    }

    /// Adds `ideal * (every generator)` to the relations.
    pub fn modulo_ideal(&self, ideal: &Ideal) -> ModulePresentation {
        let extra = Submodule::ideal_times_free(ideal, self.ngens());
        let extra = PolyMatrix::from_columns(self.ring(), self.ngens(), extra.gens());
        let relations = if extra.ncols() == 0 { self.relations.clone() } else { self.relations.hconcat(&extra).expect("same rows") };
        ModulePresentation { labels: self.labels.clone(), relations }
    }
}

impl Cokernel for ModulePresentation {
    fn relations(&self) -> Submodule {
        Submodule::column_span(&self.relations)
    }
}

/// `Fitt_i = I_(m-i)` of the relation matrix for `m` generators.
pub fn fitting_ideal(p: &ModulePresentation, i: usize) -> Result<Ideal> {
    minors_ideal_ext(p.relations(), p.ngens() as i64 - i as i64)
}

/// Whether `Fitt_0 ⊆ Fitt_1 ⊆ ... ⊆ Fitt_m = (1)`.
pub fn fitting_chain_holds(p: &ModulePresentation) -> Result<bool> {
    let chain = (0..=p.ngens()).map(|i| fitting_ideal(p, i)).collect::<Result<Vec<_>>>()?;
    for w in chain.windows(2) {
        if !w[1].contains_ideal(&w[0])? {
            return Ok(false);
        }
    }
    Ok(chain.last().is_some_and(Ideal::is_unit))
}

fn check_p_subset(idx: &[usize], p: usize, bound: usize) -> Result<()> {
    if idx.len() != p {
        return Err(Error::LengthMismatch(idx.len(), p));
    }
    check_indices(idx, bound)
}

/// `d_i^k d_j^l - d_j^k d_i^l` lies in `I_(p+1)`.
pub fn sylvester_check(m: &PolyMatrix, p: usize, i: &[usize], j: &[usize], k: &[usize], l: &[usize]) -> Result<bool> {
    for rows in [i, j] {
        check_p_subset(rows, p, m.nrows())?;
    }
    for cols in [k, l] {
        check_p_subset(cols, p, m.ncols())?;
    }
    let ideal = minors_ideal_ext(m, p as i64 + 1)?;
    let mut c = Minors::new(m);
    let (ik, jl, jk, il) = (c.det(mask(i), mask(k)), c.det(mask(j), mask(l)), c.det(mask(j), mask(k)), c.det(mask(i), mask(l)));
    Ok(ideal.contains(&(&(&ik * &jl) - &(&jk * &il))))
}

/// `d_i^k R_e - Σ_j (-1)^(j+p) d_(i - i_j + e)^k R_(i_j)` vanishes modulo
/// `I_(p+1)` in every column, where `i - i_j + e` lists the rows of `i`
/// without `i_j` followed by `e`.
pub fn row_relation_check(m: &PolyMatrix, p: usize, i: &[usize], k: &[usize], extra_row: usize) -> Result<bool> {
    check_p_subset(i, p, m.nrows())?;
    check_p_subset(k, p, m.ncols())?;
    if extra_row >= m.nrows() {
        return Err(Error::IndexOutOfRange { index: extra_row, bound: m.nrows() });
    }
    if i.contains(&extra_row) {
        return Err(Error::Invalid(format!("row {extra_row} already selected")));
    }
    let ideal = minors_ideal_ext(m, p as i64 + 1)?;
    let mut c = Minors::new(m);
    let dik = c.det(mask(i), mask(k));
    let mut coeffs = Vec::with_capacity(p);
    for jpos in 0..p {
        let mut rows: Vec<usize> = i.iter().enumerate().filter(|&(n, _)| n != jpos).map(|(_, &r)| r).collect();
        rows.push(extra_row);
        let d = ordered_minor(&mut c, &rows, k);
        // 1-based j: sign (-1)^(j+p)
        coeffs.push(if (jpos + 1 + p).is_multiple_of(2) { d } else { -&d });
    }
    for col in 0..m.ncols() {
        let mut v = &dik * m.get(extra_row, col);
        for (jpos, d) in coeffs.iter().enumerate() {
            v = &v - &(d * m.get(i[jpos], col));
        }
        if !ideal.contains(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_k a^k d_i^k` over the column subsets `k` in `coeffs`.
pub fn build_delta(m: &PolyMatrix, p: usize, i: &[usize], coeffs: &BTreeMap<Vec<usize>, Polynomial>) -> Result<Polynomial> {
    check_p_subset(i, p, m.nrows())?;
    let mut cache = Minors::new(m);
    let mut acc = Polynomial::zero(m.ring());
    for (k, a) in coeffs {
        check_p_subset(k, p, m.ncols())?;
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(a * &cache.det(mask(i), mask(k)));
    }
    Ok(acc)
}

/// Chooses `m` columns with nonzero determinant whose span contains every
/// other column.
pub fn square_presentation(p: &ModulePresentation) -> Result<ModulePresentation> {
    let (m, n) = (p.ngens(), p.relations().ncols());
    if n < m {
        return Err(Error::NoRegularSquareMinor);
    }
    let rel = p.relations();
    let mut cache = Minors::new(rel);
    let all_rows = mask(&(0..m).collect::<Vec<_>>());
    for cols in subsets(n, m) {
        if cache.det(all_rows, mask(&cols)).is_zero() {
            continue;
        }
        let chosen = rel.select_cols(&cols);
        let span = Submodule::column_span(&chosen);
        if (0..n).filter(|c| !cols.contains(c)).all(|c| span.contains(&rel.column(c))) {
            return ModulePresentation::new(p.labels().to_vec(), chosen);
        }
    }
    Err(Error::NoRegularSquareMinor)
}

/// The map `δ` for a square `ψ` and `2 <= r <= n`, with both of its
/// defining properties checked.
#[derive(Clone, Debug)]
pub struct BuchsbaumRim {
    /// Columns indexed by (row of φ, column subset), row-major.
    pub delta: PolyMatrix,
    pub phi: PolyMatrix,
    /// `im(φ δ) = I_q(φ) R^q` with `q = n - r + 1`.
    pub image_matches: bool,
    /// `ψ δ` lands in `I_q(ψ) R^n`.
    pub lands_in_minors: bool,
}

pub fn buchsbaum_rim_delta(psi: &PolyMatrix, r: usize) -> Result<BuchsbaumRim> {
    let n = psi.nrows();
    if psi.ncols() != n {
        return Err(Error::BadRange(format!("ψ must be square, got {}x{}", n, psi.ncols())));
    }
    if r < 2 || r > n {
        return Err(Error::BadRange(format!("r = {r} outside 2..={n}")));
    }
    let q = n - r + 1;
    let phi = psi.select_rows(&((r - 1)..n).collect::<Vec<_>>());
    let ring = psi.ring().clone();
    let ksets = subsets(n, q);
    let mut delta = PolyMatrix::zeros(&ring, n, q * ksets.len());
    let mut cache = Minors::new(&phi);
    for i in 0..q {
        for (kn, ks) in ksets.iter().enumerate() {
            let col = i * ksets.len() + kn;
            let other_rows: Vec<usize> = (0..q).filter(|&s| s != i).collect();
            for (j, &kj) in ks.iter().enumerate() {
                let other_cols: Vec<usize> = ks.iter().copied().filter(|&c| c != kj).collect();
                let d = cache.det(mask(&other_rows), mask(&other_cols));
                delta.set(kj, col, if (i + j) % 2 == 0 { d } else { -&d });
            }
        }
    }
    let image = Submodule::column_span(&phi.mul(&delta)?);
    let target = Submodule::ideal_times_free(&minors_ideal(&phi, q)?, q);
    let image_matches = image.equals(&target);
    let bound = Submodule::ideal_times_free(&minors_ideal(psi, q)?, n);
    let lands_in_minors = bound.contains_module(&Submodule::column_span(&psi.mul(&delta)?));
    Ok(BuchsbaumRim { delta, phi, image_matches, lands_in_minors })
}

/// `rows x cols` matrix of sparse random linear forms with coefficients in
/// `0..modulus`, roughly half the entries zero.
pub fn random_linear_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> PolyMatrix {
    let field = ring.field().clone();
    let modulus = match field.characteristic() {
        0 => 101,
        p => p as i64,
    };
    let mut m = PolyMatrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.5) {
                continue;
            }
            let mut e = Polynomial::zero(ring);
            for v in 0..ring.nvars() {
                let c = rng.gen_range(0..modulus);
                e = &e + &Polynomial::var(ring, v).scale(&field.from_i64(c));
            }
            m.set(i, j, e);
        }
    }
    m
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    let mut out = all[..k].to_vec();
    out.sort_unstable();
    out
}

/// Outcome of a randomized identity suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub trials: usize,
    pub failures: usize,
}

/// Sylvester relations on `trials` random `rows x cols` linear matrices.
pub fn sylvester_suite(ring: &Ring, rows: usize, cols: usize, p: usize, trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let m = random_linear_matrix(ring, rows, cols, &mut rng);
        let (i, j) = (random_subset(&mut rng, rows, p), random_subset(&mut rng, rows, p));
        let (k, l) = (random_subset(&mut rng, cols, p), random_subset(&mut rng, cols, p));
        if !sylvester_check(&m, p, &i, &j, &k, &l)? {
            failures += 1;
        }
    }
    Ok(SuiteOutcome { trials, failures })
}

/// Row relations on `trials` random linear matrices.
pub fn row_relation_suite(ring: &Ring, rows: usize, cols: usize, p: usize, trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let m = random_linear_matrix(ring, rows, cols, &mut rng);
        let i = random_subset(&mut rng, rows, p);
        let k = random_subset(&mut rng, cols, p);
        let rest: Vec<usize> = (0..rows).filter(|r| !i.contains(r)).collect();
        let extra = rest[rng.gen_range(0..rest.len())];
        if !row_relation_check(&m, p, &i, &k, extra)? {
            failures += 1;
        }
    }
    Ok(SuiteOutcome { trials, failures })
}
