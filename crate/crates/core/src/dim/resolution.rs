use crate::groebner::module_syzygies;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::module::Submodule;
use crate::poly::{FreeVector, Ring};
use crate::{Error, Result};

use super::codim_grade;

/// A free resolution `F_0 <- F_1 <- ... <- F_k <- 0` of a cokernel. `maps[i]`
/// is the matrix of `F_(i+1) -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    rank0: usize,
    maps: Vec<PolyMatrix>,
    minimized: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn is_minimized(&self) -> bool {
        self.minimized
    }

    /// Ranks of `F_0, F_1, ...`.
    pub fn betti(&self) -> Vec<usize> {
        let mut out = vec![self.rank0];
        out.extend(self.maps.iter().map(PolyMatrix::ncols));
        out
    }

    /// Projective dimension at the origin when minimized.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Composites vanish, each kernel is the next image, and the last map
    /// is injective.
    pub fn certify(&self) -> Result<()> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Err(Error::Certification("consecutive maps do not compose to zero".into()));
            }
        }
        for (i, d) in self.maps.iter().enumerate() {
            let kernel = Submodule::new(&self.ring, d.ncols(), module_syzygies(&self.ring, d.nrows(), &d.columns())?)?;
            let image = match self.maps.get(i + 1) {
                Some(next) => Submodule::column_span(next),
                None => Submodule::zero(&self.ring, d.ncols()),
            };
            if !kernel.equals(&image) {
                return Err(Error::Certification(format!("not exact at homological degree {}", i + 1)));
            }
        }
        Ok(())
    }
}

/// Resolution of `coker(presentation)` by iterated syzygies. Constant
/// entries are always split off. With `minimize_at_origin`, a non-constant
/// entry with nonzero constant term is a unit only locally and is rejected.
pub fn free_resolution(presentation: &PolyMatrix, minimize_at_origin: bool) -> Result<FreeResolution> {
    let ring = presentation.ring().clone();
    let keep: Vec<usize> = (0..presentation.ncols()).filter(|&j| !presentation.column(j).is_zero()).collect();
    let mut maps = vec![presentation.select_cols(&keep)];
    prune(&mut maps, 0);
    // Hilbert's syzygy theorem bounds a minimal resolution by nvars; the
    // extra step leaves room for one non-minimal tail.
    let bound = ring.nvars() + 1;
    loop {
        let last = maps.last().expect("nonempty");
        if last.ncols() == 0 || last.nrows() == 0 {
            break;
        }
        let syz = module_syzygies(&ring, last.nrows(), &last.columns())?;
        if syz.is_empty() {
            break;
        }
        if maps.len() >= bound {
            return Err(Error::Certification(format!("resolution exceeds {bound} steps")));
        }
        let next = PolyMatrix::from_columns(&ring, last.ncols(), &syz);
        maps.push(next);
        let k = maps.len() - 1;
        prune(&mut maps, k);
    }
    let rank0 = maps[0].nrows();
    while maps.last().is_some_and(|m| m.ncols() == 0) {
        maps.pop();
    }
    if minimize_at_origin {
        for m in &maps {
            if let Some(p) = m.entries().iter().find(|p| !p.constant_term().is_zero()) {
                return Err(Error::MinimizationOutsideOrigin(p.to_string()));
            }
        }
    }
    let res = FreeResolution { ring, rank0, maps, minimized: minimize_at_origin };
    res.certify()?;
    Ok(res)
}

/// Splits off trivial summands `R --u--> R` through constant entries of
/// `maps[i]`, adjusting the neighbouring map.
fn prune(maps: &mut [PolyMatrix], i: usize) {
    while let Some((a, b)) = find_constant(&maps[i]) {
        let d = &maps[i];
        let ring = d.ring().clone();
        let inv = d.get(a, b).as_constant().expect("constant");
        let inv = ring.field().inv(&inv).expect("nonzero");
        let rows: Vec<usize> = (0..d.nrows()).filter(|&r| r != a).collect();
        let cols: Vec<usize> = (0..d.ncols()).filter(|&c| c != b).collect();
        let mut out = PolyMatrix::zeros(&ring, rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            let pivot_col = d.get(r, b).scale(&inv);
            for (ci, &c) in cols.iter().enumerate() {
                let mut e = d.get(r, c).clone();
                if !pivot_col.is_zero() && !d.get(a, c).is_zero() {
                    e = &e - &(&pivot_col * d.get(a, c));
                }
                out.set(ri, ci, e);
            }
        }
        maps[i] = out;
        if i > 0 {
            let prev = &maps[i - 1];
            let keep: Vec<usize> = (0..prev.ncols()).filter(|&c| c != a).collect();
            maps[i - 1] = prev.select_cols(&keep);
        }
    }
}

fn find_constant(m: &PolyMatrix) -> Option<(usize, usize)> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let e = m.get(i, j);
            if !e.is_zero() && e.is_constant() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Perfection verdict for `R / I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perfection {
    pub perfect: bool,
    pub pd: usize,
    pub grade: usize,
}

/// `R / I` is perfect when its projective dimension at the origin equals
/// the grade of `I`.
pub fn is_perfect(i: &Ideal) -> Result<Perfection> {
    let grade = codim_grade(i)?;
    let pd = if i.is_zero() { 0 } else { free_resolution(&ideal_presentation(i), true)?.length() };
    Ok(Perfection { perfect: pd == grade, pd, grade })
}

/// Presentation `R^k -> R` of `R / I`.
pub fn ideal_presentation(i: &Ideal) -> PolyMatrix {
    let cols: Vec<FreeVector> = i.gens().iter().map(|g| FreeVector::from_polys(i.ring(), vec![g.clone()])).collect();
    if cols.is_empty() {
        return PolyMatrix::from_columns(i.ring(), 1, &[FreeVector::zero(i.ring(), 1)]);
    }
    PolyMatrix::from_columns(i.ring(), 1, &cols)
}
