//! Veronese varieties in coordinates.
//!
//! Fix a field `F`, a source dimension `m` and a degree `t`. The space `Y` and the
//! symmetric power `S^t X*` both get coordinates indexed by `E^t_m` in the
//! [`crate::mono`] order: `Y` in the basis `c_e`, `S^t X*` in the monomial basis
//! `b*^e`. The two bases are dual, so the pairing between them is the plain dot
//! product of coordinate vectors.
//!
//! A point `F x` of `P(X)` maps to `F g(x)` with `g(x)_e = x^e`. A dual point
//! `F a*` maps to `(a*)^t`, whose coordinate `e` carries the multinomial
//! coefficient `(t; e)` reduced into the prime field. The osculating hyperplane
//! along `ker a*` is the annihilator of `(a*)^t`; the nucleus is the intersection
//! of all of them.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exlin::{Echelon, ExlinError, Matrix, Subspace};
use crate::gf::{Field, FieldElement, GfError};
use crate::mono::{self, ExponentTuple, MonoError};

/// Upper bound on the number of projective points enumerated by brute force.
pub const MAX_ENUMERATED_POINTS: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VeroError {
    #[error("enumerating {points} projective points exceeds the limit of {MAX_ENUMERATED_POINTS}")]
    EnumerationTooLarge { points: u128 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Exlin(#[from] ExlinError),
    #[error(transparent)]
    Mono(#[from] MonoError),
}

/// Points of `P(F^len)`, one representative each, first nonzero coordinate 1.
///
/// Ordered by the position of the leading 1, then lexicographically on the
/// remaining coordinates (element codes, last coordinate fastest).
#[derive(Clone, Debug)]
pub struct ProjectivePoints {
    q: u64,
    coords: usize,
    count: usize,
}

impl ProjectivePoints {
    pub fn new(field: &Field, len: usize) -> Result<Self, VeroError> {
        let q = u128::from(field.order());
        let points = match len {
            0 => 0,
            _ => q.checked_pow(len as u32).map_or(u128::MAX, |qn| (qn - 1) / (q - 1)),
        };
        if points > u128::from(MAX_ENUMERATED_POINTS) {
            return Err(VeroError::EnumerationTooLarge { points });
        }
        Ok(ProjectivePoints { q: q as u64, coords: len, count: points as usize })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Coordinates (element codes) of the `index`-th point.
    pub fn get(&self, index: usize) -> Vec<u32> {
        assert!(index < self.count, "point index out of range");
        let mut rest = index as u64;
        let mut out = vec![0u32; self.coords];
        for lead in 0..self.coords {
            let block = self.q.pow((self.coords - 1 - lead) as u32);
            if rest < block {
                out[lead] = 1;
                for pos in (lead + 1..self.coords).rev() {
                    out[pos] = (rest % self.q) as u32;
                    rest /= self.q;
                }
                return out;
            }
            rest -= block;
        }
        unreachable!()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.count).map(move |i| self.get(i))
    }
}

/// Scales a nonzero code vector so that its first nonzero entry is 1.
pub fn normalize_projective(field: &Field, v: &[u32]) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let inv = field.inv_code(lead).expect("nonzero");
    Some(v.iter().map(|&c| field.mul_code(c, inv)).collect())
}

/// Field, source dimension `m`, degree `t`, and the coordinate order on `Y`.
#[derive(Clone, Debug)]
pub struct VeroContext {
    field: Field,
    m: usize,
    t: u32,
    tuples: Vec<ExponentTuple>,
    // (t; e) mod p per tuple, as prime-field codes.
    residues: Vec<u32>,
}

impl VeroContext {
    pub fn new(field: &Field, m: usize, t: u32) -> Result<Self, VeroError> {
        if t == 0 {
            return Err(VeroError::ParamOutOfRange("degree t must be at least 1".into()));
        }
        let n = mono::num_exponents(m, t);
        if n > 1 << 16 {
            return Err(VeroError::ParamOutOfRange(format!("C(m+t, t) = {n} coordinates is too many")));
        }
        let tuples = mono::enumerate_exponents(m, t);
        let p = field.p();
        let residues = tuples.iter().map(|e| mono::multinomial_mod_p(t, e, p)).collect();
        Ok(VeroContext { field: field.clone(), m, t, tuples, residues })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Dimension `C(m+t, t)` of `Y`.
    pub fn n(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[ExponentTuple] {
        &self.tuples
    }

    /// Coordinate index of `e`, if `e` lies in `E^t_m`.
    pub fn index_of(&self, e: &ExponentTuple) -> Option<usize> {
        (e.exps().len() == self.m + 1 && e.degree() == self.t).then(|| mono::rank(e) as usize)
    }

    /// Span of the unit vectors of `Y` at the given tuples.
    pub fn units_span<'a>(&self, tuples: impl IntoIterator<Item = &'a ExponentTuple>) -> Result<Subspace, VeroError> {
        let idx = tuples
            .into_iter()
            .map(|e| {
                self.index_of(e)
                    .ok_or_else(|| VeroError::ParamOutOfRange(format!("{e} is not in E^{}_{}", self.t, self.m)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_units(&self.field, self.n(), idx))
    }

    fn powers(&self, x: &[u32]) -> Vec<Vec<u32>> {
        let f = &self.field;
        x.iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(self.t as usize + 1);
                let mut acc = 1;
                for _ in 0..=self.t {
                    row.push(acc);
                    acc = f.mul_code(acc, xi);
                }
                row
            })
            .collect()
    }

    fn monomials(&self, x: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let pw = self.powers(x);
        self.tuples
            .iter()
            .map(|e| e.exps().iter().enumerate().fold(1, |acc, (i, &ei)| f.mul_code(acc, pw[i][ei as usize])))
            .collect()
    }

    /// `g(x)` as codes: coordinate `e` is `x_0^{e_0} ... x_m^{e_m}`.
    pub fn veronese_codes(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.m + 1);
        self.monomials(x)
    }

    /// `(a*)^t` as codes: coordinate `e` is `(t; e) a^e`.
    pub fn dual_power_codes(&self, a: &[u32]) -> Vec<u32> {
        assert_eq!(a.len(), self.m + 1);
        let f = &self.field;
        self.monomials(a).into_iter().zip(&self.residues).map(|(v, &r)| f.mul_code(v, r)).collect()
    }

    fn checked_codes(&self, x: &[FieldElement]) -> Result<Vec<u32>, VeroError> {
        if x.len() != self.m + 1 {
            return Err(VeroError::ParamOutOfRange(format!("expected {} coordinates, got {}", self.m + 1, x.len())));
        }
        x.iter().map(|&v| if self.field.contains(v) { Ok(v.code()) } else { Err(VeroError::FieldMismatch) }).collect()
    }

    fn to_elements(&self, codes: Vec<u32>) -> Vec<FieldElement> {
        codes.into_iter().map(|c| self.field.elem(c)).collect()
    }

    pub fn veronese_coords(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>, VeroError> {
        let x = self.checked_codes(x)?;
        Ok(self.to_elements(self.veronese_codes(&x)))
    }

    pub fn dual_power_coords(&self, a: &[FieldElement]) -> Result<Vec<FieldElement>, VeroError> {
        let a = self.checked_codes(a)?;
        Ok(self.to_elements(self.dual_power_codes(&a)))
    }

    /// Points of `P(X)` (equivalently of `P(X*)`).
    pub fn source_points(&self) -> Result<ProjectivePoints, VeroError> {
        ProjectivePoints::new(&self.field, self.m + 1)
    }

    /// Span of all `(a*)^t`, i.e. the row space of the dual-power matrix.
    pub fn dual_power_span(&self) -> Result<Subspace, VeroError> {
        let pts = self.source_points()?;
        Ok(Subspace::span_from_fn(&self.field, self.n(), pts.len(), |i| self.dual_power_codes(&pts.get(i))))
    }

    /// Intersection of all osculating hyperplanes, computed as the kernel of the
    /// dual-power matrix over every point of `P(X*)`.
    pub fn nucleus_bruteforce(&self) -> Result<Subspace, VeroError> {
        Ok(self.dual_power_span()?.annihilator())
    }

    /// Span of the base points whose multinomial vanishes mod p.
    pub fn nucleus_predicted(&self) -> Subspace {
        let idx = self.residues.iter().enumerate().filter(|(_, &r)| r == 0).map(|(i, _)| i);
        Subspace::from_units(&self.field, self.n(), idx)
    }

    /// Span of `g(X)`.
    pub fn image_span(&self) -> Result<Subspace, VeroError> {
        let pts = self.source_points()?;
        Ok(Subspace::span_from_fn(&self.field, self.n(), pts.len(), |i| self.veronese_codes(&pts.get(i))))
    }

    /// The nonzero form `b0*^q b1*^(t-q) - b0* b1*^(t-1)` that vanishes on every
    /// point of `X` when `q < t` and `m >= 1`.
    pub fn vanishing_form_witness(&self) -> Result<Vec<FieldElement>, VeroError> {
        let q = self.field.order();
        if q >= self.t || self.m == 0 {
            return Err(VeroError::HypothesisViolated(format!(
                "witness needs q < t and m >= 1 (q = {q}, t = {}, m = {})",
                self.t, self.m
            )));
        }
        let mut r = vec![0u32; self.n()];
        let mut plus = vec![0; self.m + 1];
        plus[0] = q;
        plus[1] = self.t - q;
        let mut minus = vec![0; self.m + 1];
        minus[0] = 1;
        minus[1] = self.t - 1;
        let f = &self.field;
        r[mono::rank(&ExponentTuple::new(plus)) as usize] = 1;
        r[mono::rank(&ExponentTuple::new(minus)) as usize] = f.neg_code(1);
        Ok(self.to_elements(r))
    }

    fn check_r(&self, r: usize) -> Result<(), VeroError> {
        if r >= self.m {
            return Err(VeroError::ParamOutOfRange(format!("need 0 <= r < m = {}, got r = {r}", self.m)));
        }
        Ok(())
    }

    /// The `k`-osculating subspace along the image of `P(span(b_0, ..., b_r))`:
    /// the annihilator of all products of `k+1` forms from `span(b*_{r+1}, ..., b*_m)`
    /// with `t-k-1` arbitrary forms.
    pub fn osculating_subspace(&self, r: usize, k: i64) -> Result<Subspace, VeroError> {
        self.check_r(r)?;
        if k < -1 || k > i64::from(self.t) - 1 {
            return Err(VeroError::ParamOutOfRange(format!("k = {k} outside [-1, {}]", self.t - 1)));
        }
        let from_annihilator = (k + 1) as u32;
        let tail = self.m - r - 1;
        let mut constraint = Echelon::new(&self.field, self.n());
        for u in mono::enumerate_exponents(tail, from_annihilator) {
            for w in mono::enumerate_exponents(self.m, self.t - from_annihilator) {
                let mut f = w.exps().to_vec();
                for (j, &uj) in u.exps().iter().enumerate() {
                    f[r + 1 + j] += uj;
                }
                let mut row = vec![0u32; self.n()];
                row[mono::rank(&ExponentTuple::new(f)) as usize] = 1;
                constraint.push(&row);
            }
        }
        Ok(constraint.into_subspace().annihilator())
    }

    /// Osculating subspace along the image of `P(U)` for an arbitrary
    /// `(r+1)`-dimensional `U`, given by basis rows. Reduces to the coordinate case
    /// through the induced map of a completed basis change.
    pub fn osculating_subspace_of(&self, u_basis: &Matrix, k: i64) -> Result<Subspace, VeroError> {
        let dim = self.m + 1;
        if u_basis.cols() != dim || *u_basis.field() != self.field {
            return Err(VeroError::ParamOutOfRange("basis of U must have m+1 columns over the context field".into()));
        }
        let mut e = Echelon::new(&self.field, dim);
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for i in 0..u_basis.rows() {
            if !e.push(u_basis.row(i)) {
                return Err(VeroError::ParamOutOfRange("basis of U is linearly dependent".into()));
            }
            cols.push(u_basis.row(i).to_vec());
        }
        let r = cols.len().checked_sub(1).ok_or_else(|| VeroError::ParamOutOfRange("U is zero".into()))?;
        for j in 0..dim {
            let mut unit = vec![0; dim];
            unit[j] = 1;
            if e.push(&unit) {
                cols.push(unit);
            }
        }
        // Columns of the change of basis are U's basis followed by the completion.
        let change = Matrix::from_code_rows(&self.field, dim, &cols)?.transpose();
        let s = self.symmetric_power_map(&change)?;
        Ok(self.osculating_subspace(r, k)?.image(&s)?)
    }

    fn check_sub(&self, r: usize) -> Result<(), VeroError> {
        self.check_r(r)?;
        if self.field.order() < self.t {
            return Err(VeroError::HypothesisViolated(format!(
                "sub-variety nuclei need q >= t (q = {}, t = {})",
                self.field.order(),
                self.t
            )));
        }
        Ok(())
    }

    /// Nucleus of the sub-variety over `U = span(b_0, ..., b_r)`, embedded in `Y`:
    /// the base points with vanishing multinomial supported on the first `r+1`
    /// coordinates.
    pub fn sub_nucleus(&self, r: usize) -> Result<Subspace, VeroError> {
        self.check_sub(r)?;
        let idx = self
            .tuples
            .iter()
            .enumerate()
            .filter(|(i, e)| self.residues[*i] == 0 && e.exps()[r + 1..].iter().all(|&x| x == 0))
            .map(|(i, _)| i);
        Ok(Subspace::from_units(&self.field, self.n(), idx))
    }

    /// Pads coordinates of `Y_r` (the context for `r`) into `Y`.
    fn embed_from_sub(&self, sub: &VeroContext, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.n()];
        for (e, &c) in sub.tuples.iter().zip(v) {
            let mut full = e.exps().to_vec();
            full.resize(self.m + 1, 0);
            out[mono::rank(&ExponentTuple::new(full)) as usize] = c;
        }
        out
    }

    /// Sub-variety nucleus by brute force in its own `(r, t)` context, then embedded.
    pub fn sub_nucleus_bruteforce(&self, r: usize) -> Result<Subspace, VeroError> {
        self.check_sub(r)?;
        let sub = VeroContext::new(&self.field, r, self.t)?;
        let ns = sub.nucleus_bruteforce()?;
        let rows: Vec<Vec<u32>> = (0..ns.dim()).map(|i| self.embed_from_sub(&sub, ns.basis().row(i))).collect();
        Ok(Subspace::span(&self.field, self.n(), rows.iter().map(Vec::as_slice)))
    }

    /// Span of `g(U)` for `U = span(b_0, ..., b_r)`.
    pub fn sub_image_span(&self, r: usize) -> Result<Subspace, VeroError> {
        self.check_r(r)?;
        let pts = ProjectivePoints::new(&self.field, r + 1)?;
        Ok(Subspace::span_from_fn(&self.field, self.n(), pts.len(), |i| {
            let mut x = pts.get(i);
            x.resize(self.m + 1, 0);
            self.veronese_codes(&x)
        }))
    }

    /// Whether the sub-variety nucleus equals `N ∩ span(g(U))`.
    pub fn check_sub_nucleus(&self, r: usize) -> Result<bool, VeroError> {
        let lhs = self.sub_nucleus(r)?;
        let rhs = self.nucleus_bruteforce()?.intersect(&self.sub_image_span(r)?)?;
        Ok(lhs == rhs)
    }

    /// Matrix of the map induced on `Y` by a linear map `f` of `X`, characterised by
    /// `S g(x) = g(f x)`. Row `e` holds the monomial expansion of
    /// `prod_i (f^T b*_i)^{e_i}`.
    pub fn symmetric_power_map(&self, f: &Matrix) -> Result<Matrix, VeroError> {
        let dim = self.m + 1;
        if *f.field() != self.field {
            return Err(VeroError::FieldMismatch);
        }
        if f.rows() != dim || f.cols() != dim {
            return Err(VeroError::ParamOutOfRange(format!("map must be {dim}x{dim}")));
        }
        let fld = &self.field;
        // step[d][idx][j]: rank in degree d+1 of (tuple idx of degree d) + unit_j.
        let step: Vec<Vec<Vec<usize>>> = (0..self.t)
            .map(|d| {
                mono::enumerate_exponents(self.m, d)
                    .into_iter()
                    .map(|e| {
                        (0..dim)
                            .map(|j| {
                                let mut v = e.exps().to_vec();
                                v[j] += 1;
                                mono::rank(&ExponentTuple::new(v)) as usize
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<u32>> = self
            .tuples
            .par_iter()
            .map(|e| {
                let mut poly = vec![1u32];
                let mut deg = 0usize;
                for (i, &ei) in e.exps().iter().enumerate() {
                    let form = f.row(i);
                    for _ in 0..ei {
                        let mut next = vec![0u32; mono::num_exponents(self.m, deg as u32 + 1) as usize];
                        for (idx, &c) in poly.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for (j, &fj) in form.iter().enumerate() {
                                if fj != 0 {
                                    let tgt = step[deg][idx][j];
                                    next[tgt] = fld.add_code(next[tgt], fld.mul_code(c, fj));
                                }
                            }
                        }
                        poly = next;
                        deg += 1;
                    }
                }
                poly
            })
            .collect();
        Ok(Matrix::from_code_rows(fld, self.n(), &rows)?)
    }
}

/// `{e in E^t_m : (t; e) ≡ 0 mod p}` in coordinate order.
pub fn nucleus_basis_predicted(m: usize, t: u32, p: u32) -> Vec<ExponentTuple> {
    mono::enumerate_exponents(m, t).into_iter().filter(|e| mono::multinomial_mod_p(t, e, p) == 0).collect()
}

/// The 2-dimensional subspaces of `F^len`, each given by its RREF basis.
pub fn projective_lines(field: &Field, len: usize) -> Result<Vec<Subspace>, VeroError> {
    let pts = ProjectivePoints::new(field, len)?;
    let pts: Vec<Vec<u32>> = pts.iter().collect();
    let mut seen = HashSet::new();
    let mut lines = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let line = Subspace::span(field, len, [a.as_slice(), b.as_slice()]);
            if seen.insert(line.basis().row_vecs()) {
                lines.push(line);
            }
        }
    }
    Ok(lines)
}

/// Codes of all projective points on a line given by a 2-row basis.
fn points_on_line(field: &Field, line: &Subspace) -> Vec<Vec<u32>> {
    let u = line.basis().row(0);
    let v = line.basis().row(1);
    let pl = ProjectivePoints::new(field, 2).expect("q + 1 points");
    pl.iter()
        .map(|ab| {
            u.iter().zip(v).map(|(&x, &y)| field.add_code(field.mul_code(ab[0], x), field.mul_code(ab[1], y))).collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionDemo {
    pub field: String,
    pub m: usize,
    pub t: u32,
    /// Tuple whose coordinate is dropped by the projection.
    pub center: ExponentTuple,
    pub nucleus_projective_dim: i64,
    pub points: usize,
    pub distinct_images: usize,
    /// `π∘γ` is defined (image nonzero) and injective on `P(X)`.
    pub injective: bool,
    pub lines: usize,
    /// Lines whose image span meets the nucleus trivially.
    pub lines_skew_to_nucleus: usize,
    /// Projective dimension of every line's image span before and after projecting.
    pub line_span_dims: Vec<i64>,
    pub projected_line_span_dims: Vec<i64>,
    /// Projective dimension of the span of `π∘γ(P(X))`.
    pub image_span_projective_dim: i64,
    pub all_lines_skew: bool,
}

/// Projects the Veronese variety from its nucleus (required to be a single point)
/// onto the coordinate hyperplane complementary to it, and collects the checks on
/// the composed map.
pub fn projection_demo(ctx: &VeroContext) -> Result<ProjectionDemo, VeroError> {
    let f = ctx.field();
    let nucleus = ctx.nucleus_bruteforce()?;
    if nucleus.dim() != 1 {
        return Err(VeroError::PreconditionFailed(format!(
            "nucleus must be a single point, found projective dimension {}",
            nucleus.projective_dim()
        )));
    }
    let center_vec = nucleus.basis().row(0).to_vec();
    let c = nucleus.pivots()[0];
    let project = |y: Vec<u32>| -> Vec<u32> {
        let s = y[c];
        y.iter().zip(&center_vec).map(|(&yi, &ni)| f.sub_code(yi, f.mul_code(s, ni))).collect()
    };

    let pts = ctx.source_points()?;
    let images: Vec<Option<Vec<u32>>> = (0..pts.len())
        .into_par_iter()
        .map(|i| normalize_projective(f, &project(ctx.veronese_codes(&pts.get(i)))))
        .collect();
    let defined = images.iter().all(Option::is_some);
    let distinct: HashSet<&Vec<u32>> = images.iter().flatten().collect();
    let image_span = Subspace::span(f, ctx.n(), images.iter().flatten().map(Vec::as_slice));

    let lines = projective_lines(f, ctx.m() + 1)?;
    let mut skew = 0;
    let mut line_dims = Vec::with_capacity(lines.len());
    let mut projected_dims = Vec::with_capacity(lines.len());
    for line in &lines {
        let imgs: Vec<Vec<u32>> = points_on_line(f, line).iter().map(|x| ctx.veronese_codes(x)).collect();
        let span = Subspace::span(f, ctx.n(), imgs.iter().map(Vec::as_slice));
        if span.intersect(&nucleus)?.dim() == 0 {
            skew += 1;
        }
        line_dims.push(span.projective_dim());
        let proj: Vec<Vec<u32>> = imgs.into_iter().map(&project).collect();
        projected_dims.push(Subspace::span(f, ctx.n(), proj.iter().map(Vec::as_slice)).projective_dim());
    }

    Ok(ProjectionDemo {
        field: f.spec_string(),
        m: ctx.m(),
        t: ctx.t(),
        center: ctx.tuples()[c].clone(),
        nucleus_projective_dim: nucleus.projective_dim(),
        points: pts.len(),
        distinct_images: distinct.len(),
        injective: defined && distinct.len() == pts.len(),
        lines: lines.len(),
        lines_skew_to_nucleus: skew,
        all_lines_skew: skew == lines.len(),
        line_span_dims: line_dims,
        projected_line_span_dims: projected_dims,
        image_span_projective_dim: image_span.projective_dim(),
    })
}

/// Brute-force nucleus versus digit formula for one `(field, m, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleusReport {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    pub m: usize,
    pub t: u32,
    pub predicted_dim: i64,
    pub bruteforce_dim: i64,
    /// For `q >= t`: the brute-force nucleus equals the span of the predicted base
    /// points. For `q < t`: those base points lie in the nucleus.
    pub basis_match: bool,
    /// `q < t`; the formula is then only a lower bound.
    pub small_field: bool,
}

impl NucleusReport {
    pub fn is_consistent(&self) -> bool {
        let dims_ok = if self.small_field {
            self.bruteforce_dim >= self.predicted_dim
        } else {
            self.bruteforce_dim == self.predicted_dim
        };
        dims_ok && self.basis_match
    }
}

pub fn verify(p: u32, k: u32, m: usize, t: u32) -> Result<NucleusReport, VeroError> {
    verify_field(&Field::new(p, k, None)?, m, t)
}

pub fn verify_field(field: &Field, m: usize, t: u32) -> Result<NucleusReport, VeroError> {
    verify_field_with(field, m, t, mono::nucleus_dim_formula)
}

/// [`verify_field`] with the dimension formula supplied by the caller.
pub fn verify_field_with(
    field: &Field,
    m: usize,
    t: u32,
    formula: impl Fn(usize, u32, u32) -> i128,
) -> Result<NucleusReport, VeroError> {
    let ctx = VeroContext::new(field, m, t)?;
    let brute = ctx.nucleus_bruteforce()?;
    let predicted = ctx.nucleus_predicted();
    let small_field = field.order() < t;
    let basis_match = if small_field { predicted.is_subspace_of(&brute)? } else { predicted == brute };
    let predicted_dim = i64::try_from(formula(m, t, field.p()))
        .map_err(|_| VeroError::ParamOutOfRange("formula value exceeds i64".into()))?;
    Ok(NucleusReport {
        p: field.p(),
        k: field.k(),
        q: field.order(),
        m,
        t,
        predicted_dim,
        bruteforce_dim: brute.projective_dim(),
        basis_match,
        small_field,
    })
}
