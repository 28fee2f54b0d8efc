//! From an evaluated tensor polynomial to the universal cover.
//!
//! The pipeline reads off `m = deg / n`, factors the polynomial into
//! irreducibles with multiplicities, turns each factor `(r_j, a_j)` into a
//! dimension `n_j = a_j r_j / m`, and looks `(r_j, n_j)` up in the table of
//! tube-type domains. Input coordinates are expected to be adapted to the
//! product splitting; [`ClassificationReport::adapted_coordinates`] flags
//! inputs where they are not.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::domains::{lookup, DomainProduct, IrreducibleDomain};
use crate::poly::{
    essential_variables, irreducibility_check, squarefree_decomposition, variable_blocks, Irreducibility, PolyError, Polynomial,
};

pub const DEFAULT_TRIALS: usize = 32;

pub const REASON_DEGREE: &str = "degree not a multiple of dim";
pub const REASON_FACTOR_DIM: &str = "factor dimension not an integer";
pub const REASON_NO_DOMAIN: &str = "no tube domain with (r,n)";
pub const REASON_DIM_MISMATCH: &str = "dimension mismatch";
pub const REASON_UNDECIDED: &str = "irreducibility undecided";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("the zero polynomial carries no tensor")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("a constant has no factors to classify")]
    Constant,
    #[error("dimension must be positive")]
    InvalidDim,
    #[error("polynomial has {nvars} variables but the dimension is {dim}")]
    TooManyVariables { nvars: usize, dim: usize },
    #[error("semi-special tensors have degree n = {dim}, got {degree}")]
    DegreeNotDim { degree: u32, dim: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { trials: DEFAULT_TRIALS, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorRecord {
    pub poly: Polynomial,
    /// Degree of the irreducible factor over the complex numbers.
    pub degree: u32,
    pub multiplicity: u32,
    pub dim: Option<u32>,
    pub domain: Option<IrreducibleDomain>,
    /// One of the linear factors of a rationally irreducible `poly` that
    /// splits over the complex numbers.
    pub complex_split: bool,
}

impl Serialize for FactorRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FactorRecord", 6)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("complex_split", &self.complex_split)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Polydisk,
    TubeProduct(DomainProduct),
    Rejected { reason: String, offending: Option<Polynomial> },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        !matches!(self, Verdict::Rejected { .. })
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Rejected { reason, .. } => Some(reason),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub k: u32,
    pub n: u32,
    /// `None` when `k` is not a multiple of `n`.
    pub m: Option<u32>,
    pub factors: Vec<FactorRecord>,
    pub verdict: Verdict,
    /// Whether a 2-torsion twist is consistent with the data: `m = 1` and
    /// some factor of the cover repeats.
    pub signature_character_possible: bool,
    /// Every variable block is carried by a single irreducible factor with
    /// matching dimension.
    pub adapted_coordinates: bool,
    pub semispecial: bool,
}

impl ClassificationReport {
    /// The recognized product (all disks for a polydisk).
    pub fn product(&self) -> Option<DomainProduct> {
        match &self.verdict {
            Verdict::Polydisk => Some(DomainProduct::polydisk(self.n)),
            Verdict::TubeProduct(p) => Some(p.clone()),
            Verdict::Rejected { .. } => None,
        }
    }
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClassificationReport", 10)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("factors", &self.factors)?;
        let (verdict, product) = match &self.verdict {
            Verdict::Polydisk => ("Polydisk", self.product()),
            Verdict::TubeProduct(p) => ("TubeProduct", Some(p.clone())),
            Verdict::Rejected { .. } => ("Rejected", None),
        };
        st.serialize_field("verdict", verdict)?;
        if let Some(p) = product {
            st.serialize_field("product", &p)?;
        }
        if let Verdict::Rejected { reason, offending } = &self.verdict {
            st.serialize_field("reason", reason)?;
            st.serialize_field("offending", &offending.as_ref().map(|p| p.to_string()))?;
        }
        st.serialize_field("signature_character_possible", &self.signature_character_possible)?;
        st.serialize_field("adapted_coordinates", &self.adapted_coordinates)?;
        st.end()
    }
}

pub fn classify(psi: &Polynomial, n: u32) -> Result<ClassificationReport> {
    classify_with(psi, n, &ClassifyOptions::default())
}

pub fn classify_with(psi: &Polynomial, n: u32, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    run(psi, n, opts, false)
}

/// Classification of a semi-special tensor (`deg = n`, so `m = 1`).
pub fn classify_semispecial(psi: &Polynomial, n: u32) -> Result<ClassificationReport> {
    classify_semispecial_with(psi, n, &ClassifyOptions::default())
}

pub fn classify_semispecial_with(psi: &Polynomial, n: u32, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let degree = psi.total_degree().ok_or(ClassifyError::ZeroPolynomial)?;
    if degree != n {
        return Err(ClassifyError::DegreeNotDim { degree, dim: n });
    }
    run(psi, n, opts, true)
}

fn rejected(reason: &str, offending: Option<Polynomial>) -> Verdict {
    Verdict::Rejected { reason: reason.to_string(), offending }
}

fn run(psi: &Polynomial, n: u32, opts: &ClassifyOptions, semispecial: bool) -> Result<ClassificationReport> {
    if psi.is_zero() {
        return Err(ClassifyError::ZeroPolynomial);
    }
    if n == 0 {
        return Err(ClassifyError::InvalidDim);
    }
    if psi.nvars() > n as usize {
        return Err(ClassifyError::TooManyVariables { nvars: psi.nvars(), dim: n as usize });
    }
    let k = psi.is_homogeneous()?.ok_or(ClassifyError::NotHomogeneous)?;
    if k == 0 {
        return Err(ClassifyError::Constant);
    }
    let psi = psi.embed(n as usize, 0)?;
    let mut report = ClassificationReport {
        k,
        n,
        m: None,
        factors: Vec::new(),
        verdict: rejected(REASON_DEGREE, None),
        signature_character_possible: false,
        adapted_coordinates: false,
        semispecial,
    };
    if k % n != 0 {
        return Ok(report);
    }
    let m = k / n;
    report.m = Some(m);

    let ff = squarefree_decomposition(&psi)?;
    let blocks = variable_blocks(&ff);
    let mut adapted = true;
    let mut seed = opts.seed;
    // (factor, essential variable count, number of complex factors)
    let mut essential: Vec<(Polynomial, u32, u32)> = Vec::new();
    for block in &blocks {
        let mut block_dim = 0u32;
        let mut irreducible_count = 0;
        // Reducible pieces are split along their witnesses until every
        // piece is irreducible.
        let mut queue: Vec<(Polynomial, u32)> = block.factors.clone();
        while let Some((f, a)) = queue.pop() {
            let verdict = irreducibility_check(&f, opts.trials, seed)?;
            seed = seed.wrapping_add(1);
            match verdict {
                Irreducibility::Reducible(w) => {
                    queue.push((w.factor, a));
                    queue.push((w.cofactor, a));
                }
                Irreducibility::Inconclusive => {
                    report.factors.push(FactorRecord {
                        degree: f.total_degree().unwrap_or(0),
                        poly: f.clone(),
                        multiplicity: a,
                        dim: None,
                        domain: None,
                        complex_split: false,
                    });
                    report.verdict = rejected(REASON_UNDECIDED, Some(f));
                    return Ok(report);
                }
                Irreducibility::Irreducible { complex_split } => {
                    let r = f.total_degree().expect("nonzero factor");
                    let (copies, degree) = if complex_split { (r, 1) } else { (1, r) };
                    essential.push((f.normalized(), essential_variables(&f) as u32, copies));
                    for _ in 0..copies {
                        irreducible_count += 1;
                        let dim = (a * degree % m == 0).then(|| a * degree / m);
                        let domain = dim.and_then(|d| lookup(degree, d));
                        block_dim += dim.unwrap_or(0);
                        report.factors.push(FactorRecord {
                            poly: f.normalized(),
                            degree,
                            multiplicity: a,
                            dim,
                            domain,
                            complex_split,
                        });
                    }
                }
            }
        }
        adapted &= irreducible_count == 1 && block_dim as usize == block.variables.len();
    }
    report.adapted_coordinates = adapted;
    report.factors.sort_by(|x, y| (x.domain, x.degree, x.poly.to_string()).cmp(&(y.domain, y.degree, y.poly.to_string())));

    if let Some(bad) = report.factors.iter().find(|f| f.dim.is_none() || f.dim == Some(0)) {
        report.verdict = rejected(REASON_FACTOR_DIM, Some(bad.poly.clone()));
        return Ok(report);
    }
    if let Some(bad) = report.factors.iter().find(|f| f.domain.is_none()) {
        report.verdict = rejected(REASON_NO_DOMAIN, Some(bad.poly.clone()));
        return Ok(report);
    }
    // A norm of an n_j-dimensional domain depends on exactly n_j linear
    // forms.
    for (f, ess, copies) in &essential {
        let dim = report.factors.iter().find(|r| &r.poly == f).and_then(|r| r.dim).unwrap_or(0);
        if *ess != copies * dim {
            report.verdict = rejected(REASON_DIM_MISMATCH, Some(f.clone()));
            return Ok(report);
        }
    }
    let total: u32 = report.factors.iter().filter_map(|f| f.dim).sum();
    if total != n {
        report.verdict = rejected(REASON_DIM_MISMATCH, None);
        return Ok(report);
    }
    let domains: Vec<IrreducibleDomain> = report.factors.iter().filter_map(|f| f.domain).collect();
    let product = DomainProduct::new(domains.iter().copied());
    let mut counts: BTreeMap<IrreducibleDomain, usize> = BTreeMap::new();
    for d in &domains {
        *counts.entry(*d).or_default() += 1;
    }
    report.signature_character_possible = m == 1 && counts.values().any(|&c| c > 1);
    report.verdict = if product.is_polydisk() { Verdict::Polydisk } else { Verdict::TubeProduct(product) };
    Ok(report)
}

/// A readable account of how the verdict was reached.
pub fn explain(report: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree k = {}, dimension n = {}", report.k, report.n);
    match report.m {
        Some(m) => {
            let _ = writeln!(out, "twist m = k/n = {m}");
        }
        None => {
            let _ = writeln!(out, "k is not a multiple of n: no slope-zero tensor of this degree");
        }
    }
    for f in &report.factors {
        let split = if f.complex_split { " (linear factor over C)" } else { "" };
        let _ = write!(out, "factor {}{split}: r = {}, multiplicity a = {}", f.poly, f.degree, f.multiplicity);
        match (f.dim, f.domain) {
            (Some(d), Some(dom)) => {
                let _ = writeln!(out, ", n_j = a r / m = {d} -> {dom}");
            }
            (Some(d), None) => {
                let _ = writeln!(out, ", n_j = {d}, but no tube domain has rank {} and dimension {d}", f.degree);
            }
            (None, _) => {
                let _ = writeln!(out, ", a r / m is not an integer");
            }
        }
    }
    if report.m.is_some() && !report.adapted_coordinates && report.verdict.is_accepted() {
        let _ = writeln!(out, "note: coordinates are not adapted to the product splitting");
    }
    match &report.verdict {
        Verdict::Polydisk => {
            if report.m == Some(1) {
                let _ = writeln!(out, "psi is square-free with linear factors (square-free criterion)");
            } else {
                let _ = writeln!(out, "every factor is linear with a = m");
            }
            let _ = writeln!(out, "verdict: polydisk H^{}", report.n);
        }
        Verdict::TubeProduct(p) => {
            let _ = writeln!(out, "rank and dimension determine each factor uniquely");
            let _ = writeln!(out, "verdict: {p}");
        }
        Verdict::Rejected { reason, offending } => {
            let _ = write!(out, "rejected: {reason}");
            if let Some(p) = offending {
                let _ = write!(out, " (factor {p})");
            }
            out.push('\n');
        }
    }
    if report.signature_character_possible {
        let _ = writeln!(out, "a 2-torsion twist permuting repeated factors is possible");
    }
    out
}
