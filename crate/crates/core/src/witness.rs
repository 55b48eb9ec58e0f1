//! Witness derivations and non-rigidity certificates.
//!
//! Each construction produces a nonzero derivation E with constant
//! images that commutes with the analyzed derivation D. Commutation
//! makes E map ker D into itself, so exhibiting a kernel element that E
//! does not kill proves ker D carries a nonzero locally nilpotent
//! derivation. Kernel elements are produced by the Dixmier map through a
//! local slice. When every sample dies under E, the fallback criterion
//! compares the kernels directly through linear forms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::derivation::{CertifyError, Derivation, LndCertificate};
use crate::random::random_sample_poly;
use crate::ring::{matrix_is_nilpotent, nullspace_vector, ConstMatrix, Poly, RingError};
use crate::structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("variable {name} appears in an image; the missing-variable construction does not apply")]
    VariableNotMissing { name: String },
    #[error("the images are not triangular in the proposed variable order")]
    NotTriangular,
    #[error("some image has a nonzero row sum; the divergence construction does not apply")]
    DivergenceNonzero,
    #[error("the derivation is not linear in the given coordinates")]
    NotLinear,
    #[error("the coefficient matrix is not nilpotent, so the derivation is not locally nilpotent")]
    MatrixNotNilpotent,
    #[error("no local slice: the derivation vanishes on every generator")]
    NoSlice,
    #[error("(s, r) is not a local slice: need D(s) = r, r nonzero, D(r) = 0")]
    InvalidSlice,
    #[error("iteration budget {0} exhausted")]
    Budget(usize),
    #[error("supplied kernel hint '{element}' is not annihilated by the derivation")]
    HintNotInKernel { element: String },
    #[error("the witness does not commute with the analyzed derivation")]
    NonCommuting,
    #[error("the witness derivation is zero")]
    ZeroWitness,
    #[error("the witness could not be certified locally nilpotent: {0}")]
    WitnessNotLnd(CertifyError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Where a kernel element came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleOrigin {
    /// A kernel hint from the input document.
    UserSupplied,
    /// Dixmier image of the polynomial `source` through the slice (s, r);
    /// the element equals the map's value times r^r_power, up to a
    /// positive rational unit.
    Dixmier {
        source: Poly,
        slice_s: Poly,
        slice_r: Poly,
        r_power: usize,
    },
    /// The generator itself; only possible when the derivation is zero,
    /// where no slice exists and every generator is already in the kernel.
    Generator { index: usize },
}

/// An element of ker D together with its provenance.
/// Invariant: apply(D, element) = 0 exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSample {
    pub element: Poly,
    pub origin: SampleOrigin,
}

/// Which construction produced the witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    MissingVariable { variable: usize },
    Triangular { order: Vec<usize> },
    Divergence,
    Linear,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::MissingVariable { .. } => "MISSING_VARIABLE",
            Provenance::Triangular { .. } => "TRIANGULAR",
            Provenance::Divergence => "DIVERGENCE",
            Provenance::Linear => "LINEAR",
        })
    }
}

/// How the certificate establishes non-rigidity of ker D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// A concrete kernel element that E does not kill: the restriction
    /// of E to ker D is a nonzero locally nilpotent derivation.
    InheritedLnd { sample: KernelSample, image: Poly },
    /// n - 1 independent linear forms spanning ker E that D also kills;
    /// the kernels coincide and ker D is a polynomial ring over R.
    CoordinateKernel { forms: Vec<Poly> },
    /// No sample separated or populated the kernel at this budget.
    InconclusiveSamples,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::InheritedLnd { .. } => "INHERITED_LND",
            Branch::CoordinateKernel { .. } => "COORDINATE_KERNEL",
            Branch::InconclusiveSamples => "INCONCLUSIVE_SAMPLES",
        }
    }
}

/// The full witness package for one construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonRigidityCertificate {
    pub witness: Derivation,
    /// Always true in an issued certificate; recorded so the verifier
    /// re-checks the exact equality rather than trusting the flag.
    pub commutation_check: bool,
    pub witness_lnd: LndCertificate,
    pub branch: Branch,
    pub provenance: Provenance,
    pub justification: String,
}

fn justification_for(branch: &Branch) -> String {
    match branch {
        Branch::InheritedLnd { .. } => "The witness E commutes with D, so E maps ker D into \
            itself. The recorded sample lies in ker D and E sends it to the recorded nonzero \
            image, so E restricts to a nonzero locally nilpotent derivation of ker D."
            .to_string(),
        Branch::CoordinateKernel { .. } => "Each recorded form is killed by both E and D, so \
            ker E, the R-algebra generated by the forms, is contained in ker D. Kernels of \
            nonzero locally nilpotent derivations are factorially closed and leave transcendence \
            degree one over the full ring, so the containment is an equality. ker D is therefore \
            a polynomial ring over R in the forms and carries the coordinate derivation with \
            respect to the first form."
            .to_string(),
        Branch::InconclusiveSamples => "The witness E is a nonzero locally nilpotent derivation \
            commuting with D, so E maps ker D into itself. None of the sampled kernel elements \
            separates the kernels at this budget, so whether the restriction of E to ker D is \
            nonzero remains undecided."
            .to_string(),
    }
}

/// E = d/dX_j for a variable absent from every image.
pub fn witness_missing_variable(d: &Derivation, j: usize) -> Result<Derivation, WitnessError> {
    let table = d.table();
    let xj = table.variable(j);
    if d.images().iter().any(|f| f.degree_in(xj) > 0) {
        return Err(WitnessError::VariableNotMissing {
            name: table.name(xj).to_string(),
        });
    }
    let e = Derivation::coordinate(table, j);
    debug_assert!(d.commutes_with(&e).unwrap());
    Ok(e)
}

/// E = sum_i d/dX_i when every image has vanishing row sum.
pub fn witness_divergence(d: &Derivation) -> Result<Derivation, WitnessError> {
    if !d.divergence_condition() {
        return Err(WitnessError::DivergenceNonzero);
    }
    let table = d.table();
    let images = vec![Poly::one(table); table.num_variables()];
    let e = Derivation::new(table, images).expect("one image per variable");
    debug_assert!(d.commutes_with(&e).unwrap());
    Ok(e)
}

fn order_is_triangular(d: &Derivation, order: &[usize]) -> bool {
    let table = d.table();
    let n = table.num_variables();
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || seen[v] {
            return false;
        }
        for &later in &order[i..] {
            if d.image(v).degree_in(table.variable(later)) > 0 {
                return false;
            }
        }
        seen[v] = true;
    }
    true
}

/// E = d/dX_{order[n-1]}: the last variable of a triangular order is
/// absent from every image, so this reduces to the missing-variable
/// construction.
pub fn witness_triangular(d: &Derivation, order: &[usize]) -> Result<Derivation, WitnessError> {
    if !order_is_triangular(d, order) {
        return Err(WitnessError::NotTriangular);
    }
    let last = *order.last().expect("n >= 1");
    witness_missing_variable(d, last)
        .map_err(|_| WitnessError::NotTriangular)
}

/// E = sum_i lambda_i d/dX_i for a nullvector Lambda of the coefficient
/// matrix; commutation follows from A Lambda = 0.
pub fn witness_linear(d: &Derivation, a: &ConstMatrix) -> Result<Derivation, WitnessError> {
    match structure::detect_linear(d) {
        Some(detected) if &detected == a => {}
        _ => return Err(WitnessError::NotLinear),
    }
    if matrix_is_nilpotent(a).is_none() {
        return Err(WitnessError::MatrixNotNilpotent);
    }
    let lambda = nullspace_vector(a).expect("nilpotent matrices are singular");
    let e = Derivation::new(d.table(), lambda.entries().to_vec()).expect("n entries");
    debug_assert!(a.apply(&lambda).unwrap().is_zero());
    debug_assert!(d.commutes_with(&e).unwrap());
    Ok(e)
}

/// The local slice (s, r) = (D^{nu-2}(X_i), D^{nu-1}(X_i)) taken from
/// the smallest-index generator with index nu >= 2; satisfies
/// D(s) = r != 0 and D(r) = 0.
pub fn find_local_slice(
    d: &Derivation,
    cert: &LndCertificate,
) -> Result<(Poly, Poly), WitnessError> {
    let table = d.table();
    assert_eq!(cert.indices.len(), table.num_variables(), "certificate shape");
    let Some((i, &nu)) = cert.indices.iter().enumerate().find(|&(_, &nu)| nu >= 2) else {
        return Err(WitnessError::NoSlice);
    };
    let x = Poly::var(table, i);
    let s = d.apply_power(&x, nu - 2)?;
    let r = d.apply(&s)?;
    debug_assert!(!r.is_zero() && d.apply(&r).unwrap().is_zero());
    Ok((s, r))
}

/// The Dixmier image of b through the slice (s, r), cleared of
/// denominators: pi(b) = sum_{i<nu} (-1)^i/i! D^i(b) (s/r)^i equals
/// (numerator / r^k) up to a positive rational unit, and the numerator
/// satisfies D(numerator) = 0 exactly. `None` when pi(b) = 0.
pub fn dixmier_sample(
    d: &Derivation,
    s: &Poly,
    r: &Poly,
    b: &Poly,
    budget: usize,
) -> Result<Option<(Poly, usize)>, WitnessError> {
    if r.is_zero() || &d.apply(s)? != r || !d.apply(r)?.is_zero() {
        return Err(WitnessError::InvalidSlice);
    }
    let nu = match d.nilpotency_index(b, budget) {
        Ok(nu) => nu,
        Err(CertifyError::BudgetExceeded { budget }) => {
            return Err(WitnessError::Budget(budget))
        }
        Err(CertifyError::Ring(e)) => return Err(WitnessError::Ring(e)),
        Err(CertifyError::NotLnd) => unreachable!("iteration never proves non-nilpotency"),
    };
    if nu == 0 {
        return Ok(None);
    }
    let table = d.table();
    let mut rpows = Vec::with_capacity(nu);
    rpows.push(Poly::one(table));
    for i in 1..nu {
        rpows.push(&rpows[i - 1] * r);
    }
    let mut acc = Poly::zero(table);
    let mut dib = b.clone();
    let mut spow = Poly::one(table);
    let mut factorial = BigInt::one();
    for i in 0..nu {
        if i > 0 {
            dib = d.apply(&dib)?;
            spow = &spow * s;
            factorial *= BigInt::from(i as u64);
        }
        let mut coeff = BigRational::new(BigInt::one(), factorial.clone());
        if i % 2 == 1 {
            coeff = -coeff;
        }
        let term = &(&dib * &spow) * &rpows[nu - 1 - i];
        acc = &acc + &term.scale(&coeff);
    }
    if acc.is_zero() {
        return Ok(None);
    }
    // strip shared r powers so k records the true localization depth
    let mut k = nu - 1;
    while k > 0 {
        match acc.div_exact(r) {
            Some(q) => {
                acc = q;
                k -= 1;
            }
            None => break,
        }
    }
    debug_assert!(d.apply(&acc).unwrap().is_zero());
    Ok(Some((acc.primitive_part(), k)))
}

/// Gathers kernel samples in deterministic order: user hints, then the
/// Dixmier images of all generators, then `random_count` seeded random
/// polynomials of degree at most 2. When no slice exists the derivation
/// is zero and the generators themselves are the samples.
pub fn collect_samples<R: Rng + ?Sized>(
    d: &Derivation,
    cert: &LndCertificate,
    hints: &[Poly],
    random_count: usize,
    rng: &mut R,
    budget: usize,
) -> Result<Vec<KernelSample>, WitnessError> {
    let table = d.table();
    let mut out = Vec::new();
    for h in hints {
        if !d.apply(h)?.is_zero() {
            return Err(WitnessError::HintNotInKernel {
                element: h.to_string(),
            });
        }
        out.push(KernelSample {
            element: h.clone(),
            origin: SampleOrigin::UserSupplied,
        });
    }
    match find_local_slice(d, cert) {
        Ok((s, r)) => {
            let push_dixmier =
                |out: &mut Vec<KernelSample>, b: &Poly| -> Result<(), WitnessError> {
                    match dixmier_sample(d, &s, &r, b, budget) {
                        Ok(Some((element, r_power))) => {
                            out.push(KernelSample {
                                element,
                                origin: SampleOrigin::Dixmier {
                                    source: b.clone(),
                                    slice_s: s.clone(),
                                    slice_r: r.clone(),
                                    r_power,
                                },
                            });
                            Ok(())
                        }
                        Ok(None) => Ok(()),
                        Err(WitnessError::Budget(_)) => Ok(()),
                        Err(e) => Err(e),
                    }
                };
            for i in 0..table.num_variables() {
                push_dixmier(&mut out, &Poly::var(table, i))?;
            }
            for _ in 0..random_count {
                let b = random_sample_poly(table, rng);
                push_dixmier(&mut out, &b)?;
            }
        }
        Err(WitnessError::NoSlice) => {
            for i in 0..table.num_variables() {
                out.push(KernelSample {
                    element: Poly::var(table, i),
                    origin: SampleOrigin::Generator { index: i },
                });
            }
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Resolves the certificate branch for a constructed witness.
///
/// Order of resolution: a sample E does not kill proves the inherited
/// LND directly; otherwise, when D is nonzero, n >= 2, and the witness
/// has constant images, the coordinate-kernel criterion D(L_m) = 0 on
/// the forms L_m = lambda_j0 X_m - lambda_m X_j0 decides kernel
/// equality; otherwise the samples were inconclusive.
pub fn assemble_certificate(
    d: &Derivation,
    e: &Derivation,
    samples: &[KernelSample],
    budget: usize,
    provenance: Provenance,
) -> Result<NonRigidityCertificate, WitnessError> {
    if e.is_zero() {
        return Err(WitnessError::ZeroWitness);
    }
    if !d.commutes_with(e)? {
        return Err(WitnessError::NonCommuting);
    }
    // every witness has constant images, so indices are at most 2; the
    // floor keeps a caller-supplied budget of 1 from failing a sound witness
    let witness_lnd = e
        .certify_lnd(budget.max(2))
        .map_err(WitnessError::WitnessNotLnd)?;

    let mut branch = None;
    for sample in samples {
        if !d.apply(&sample.element)?.is_zero() {
            debug_assert!(false, "sample outside the kernel");
            continue;
        }
        let image = e.apply(&sample.element)?;
        if !image.is_zero() {
            branch = Some(Branch::InheritedLnd {
                sample: sample.clone(),
                image,
            });
            break;
        }
    }

    let table = d.table();
    let n = table.num_variables();
    if branch.is_none() && !d.is_zero() && n >= 2 && e.images().iter().all(Poly::is_constant) {
        let lambda = e.images();
        let j0 = (0..n).find(|&i| !lambda[i].is_zero()).expect("nonzero witness");
        let xj0 = Poly::var(table, j0);
        let mut forms = Vec::with_capacity(n - 1);
        for m in (0..n).filter(|&m| m != j0) {
            let form = &(&lambda[j0] * &Poly::var(table, m)) - &(&lambda[m] * &xj0);
            forms.push(form.primitive_part());
        }
        let kernels_match = forms
            .iter()
            .map(|l| Ok(d.apply(l)?.is_zero() && e.apply(l)?.is_zero()))
            .collect::<Result<Vec<bool>, RingError>>()?
            .into_iter()
            .all(|ok| ok);
        if kernels_match {
            branch = Some(Branch::CoordinateKernel { forms });
        }
    }

    let branch = branch.unwrap_or(Branch::InconclusiveSamples);
    let justification = justification_for(&branch);
    Ok(NonRigidityCertificate {
        witness: e.clone(),
        commutation_check: true,
        witness_lnd,
        branch,
        provenance,
        justification,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::parse::parse_expression;
    use crate::ring::VarTable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table3() -> Arc<VarTable> {
        VarTable::new([], ["x1", "x2", "x3"]).unwrap()
    }

    fn weitzenboeck(tab: &Arc<VarTable>) -> Derivation {
        Derivation::new(
            tab,
            vec![Poly::zero(tab), Poly::var(tab, 0), Poly::var(tab, 1)],
        )
        .unwrap()
    }

    #[test]
    fn missing_variable_witness_is_last_coordinate() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let e = witness_missing_variable(&d, 2).unwrap();
        assert_eq!(e, Derivation::coordinate(&tab, 2));
        assert!(d.commutes_with(&e).unwrap());
        for img in e.images() {
            assert!(e.apply(img).unwrap().is_zero());
        }
        assert!(matches!(
            witness_missing_variable(&d, 0),
            Err(WitnessError::VariableNotMissing { .. })
        ));
    }

    #[test]
    fn divergence_witness_sums_coordinates() {
        let tab = VarTable::new([], ["x1", "x2"]).unwrap();
        let f = parse_expression("(x1 - x2)^2", &tab).unwrap();
        let d = Derivation::new(&tab, vec![f.clone(), f]).unwrap();
        let e = witness_divergence(&d).unwrap();
        assert_eq!(e.images(), &[Poly::one(&tab), Poly::one(&tab)]);
        assert!(d.commutes_with(&e).unwrap());
        let tab3 = table3();
        assert!(matches!(
            witness_divergence(&weitzenboeck(&tab3)),
            Err(WitnessError::DivergenceNonzero)
        ));
        assert!(witness_divergence(&Derivation::zero(&tab3)).is_ok());
    }

    #[test]
    fn triangular_witness_takes_last_in_order() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let e = witness_triangular(&d, &[0, 1, 2]).unwrap();
        assert_eq!(e, Derivation::coordinate(&tab, 2));
        // degree-2 triangular example
        let d2 = Derivation::new(
            &tab,
            vec![
                Poly::zero(&tab),
                parse_expression("x1^2", &tab).unwrap(),
                Poly::var(&tab, 1),
            ],
        )
        .unwrap();
        let e2 = witness_triangular(&d2, &[0, 1, 2]).unwrap();
        assert_eq!(e2, Derivation::coordinate(&tab, 2));
        assert!(matches!(
            witness_triangular(&d, &[2, 1, 0]),
            Err(WitnessError::NotTriangular)
        ));
        // n = 1 with a constant image
        let tab1 = VarTable::new(["t"], ["x1"]).unwrap();
        let d1 = Derivation::new(&tab1, vec![parse_expression("t", &tab1).unwrap()]).unwrap();
        let e1 = witness_triangular(&d1, &[0]).unwrap();
        assert!(d1.commutes_with(&e1).unwrap());
    }

    #[test]
    fn linear_witness_solves_the_nullspace() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let a = structure::detect_linear(&d).unwrap();
        let e = witness_linear(&d, &a).unwrap();
        assert_eq!(e, Derivation::coordinate(&tab, 2));

        let tab2 = VarTable::new([], ["x1", "x2"]).unwrap();
        let a2 = ConstMatrix::from_int_rows(&tab2, &[&[2, -4], &[1, -2]]).unwrap();
        let d2 = Derivation::from_matrix(&a2);
        let e2 = witness_linear(&d2, &a2).unwrap();
        assert_eq!(e2.image(0), &Poly::from_int(&tab2, 2));
        assert_eq!(e2.image(1), &Poly::one(&tab2));
        assert!(d2.commutes_with(&e2).unwrap());

        let euler = ConstMatrix::from_int_rows(&tab2, &[&[1, 0], &[0, 1]]).unwrap();
        let de = Derivation::from_matrix(&euler);
        assert!(matches!(
            witness_linear(&de, &euler),
            Err(WitnessError::MatrixNotNilpotent)
        ));
        assert!(matches!(
            witness_linear(&d2, &euler),
            Err(WitnessError::NotLinear)
        ));
    }

    #[test]
    fn linear_witness_cancels_parameter_factor() {
        let tab = VarTable::new(["t"], ["x1", "x2"]).unwrap();
        let t = parse_expression("t", &tab).unwrap();
        let z = Poly::zero(&tab);
        let a = ConstMatrix::new(&tab, 2, vec![z.clone(), t, z.clone(), z]).unwrap();
        let d = Derivation::from_matrix(&a);
        let e = witness_linear(&d, &a).unwrap();
        assert_eq!(e, Derivation::coordinate(&tab, 0));
    }

    #[test]
    fn local_slice_picks_smallest_eligible_generator() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let cert = d.certify_lnd(64).unwrap();
        let (s, r) = find_local_slice(&d, &cert).unwrap();
        assert_eq!(s, Poly::var(&tab, 1));
        assert_eq!(r, Poly::var(&tab, 0));

        let tab1 = VarTable::new([], ["x1"]).unwrap();
        let d1 = Derivation::coordinate(&tab1, 0);
        let cert1 = d1.certify_lnd(64).unwrap();
        let (s1, r1) = find_local_slice(&d1, &cert1).unwrap();
        assert_eq!(s1, Poly::var(&tab1, 0));
        assert!(r1.is_one());

        let z = Derivation::zero(&tab);
        let zcert = z.certify_lnd(64).unwrap();
        assert!(matches!(
            find_local_slice(&z, &zcert),
            Err(WitnessError::NoSlice)
        ));
    }

    #[test]
    fn dixmier_reproduces_the_classic_invariant() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let s = Poly::var(&tab, 1);
        let r = Poly::var(&tab, 0);
        let (num, k) = dixmier_sample(&d, &s, &r, &Poly::var(&tab, 2), 64)
            .unwrap()
            .unwrap();
        assert_eq!(num, parse_expression("2*x1*x3 - x2^2", &tab).unwrap());
        assert_eq!(k, 1);
        assert!(d.apply(&num).unwrap().is_zero());

        let (num1, k1) = dixmier_sample(&d, &s, &r, &Poly::var(&tab, 0), 64)
            .unwrap()
            .unwrap();
        assert_eq!((num1, k1), (Poly::var(&tab, 0), 0));

        assert_eq!(dixmier_sample(&d, &s, &r, &Poly::var(&tab, 1), 64).unwrap(), None);
        assert_eq!(
            dixmier_sample(&d, &s, &r, &Poly::zero(&tab), 64).unwrap(),
            None
        );
    }

    #[test]
    fn dixmier_rejects_bad_slices_and_budgets() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let bad = dixmier_sample(&d, &Poly::var(&tab, 0), &Poly::var(&tab, 1), &Poly::var(&tab, 2), 64);
        assert!(matches!(bad, Err(WitnessError::InvalidSlice)));
        let s = Poly::var(&tab, 1);
        let r = Poly::var(&tab, 0);
        assert!(matches!(
            dixmier_sample(&d, &s, &r, &Poly::var(&tab, 2), 2),
            Err(WitnessError::Budget(2))
        ));
    }

    #[test]
    fn assemble_inherited_lnd_for_weitzenboeck() {
        let tab = table3();
        let d = weitzenboeck(&tab);
        let cert = d.certify_lnd(64).unwrap();
        let e = witness_missing_variable(&d, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples = collect_samples(&d, &cert, &[], 4, &mut rng, 64).unwrap();
        let nrc = assemble_certificate(&d, &e, &samples, 64, Provenance::MissingVariable { variable: 2 })
            .unwrap();
        match &nrc.branch {
            Branch::InheritedLnd { sample, image } => {
                assert_eq!(
                    sample.element,
                    parse_expression("2*x1*x3 - x2^2", &tab).unwrap()
                );
                assert_eq!(image, &parse_expression("2*x1", &tab).unwrap());
            }
            other => panic!("expected inherited branch, got {}", other.name()),
        }
        assert!(nrc.commutation_check);
        assert!(nrc.witness_lnd.indices.iter().all(|&nu| nu <= 2));
    }

    #[test]
    fn assemble_coordinate_kernel_for_rank_one_linear() {
        let tab = VarTable::new([], ["x1", "x2"]).unwrap();
        let a = ConstMatrix::from_int_rows(&tab, &[&[2, -4], &[1, -2]]).unwrap();
        let d = Derivation::from_matrix(&a);
        let cert = d.certify_lnd(64).unwrap();
        let e = witness_linear(&d, &a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples = collect_samples(&d, &cert, &[], 4, &mut rng, 64).unwrap();
        let nrc = assemble_certificate(&d, &e, &samples, 64, Provenance::Linear).unwrap();
        match &nrc.branch {
            Branch::CoordinateKernel { forms } => {
                assert_eq!(forms.len(), 1);
                assert_eq!(forms[0], parse_expression("x1 - 2*x2", &tab).unwrap());
                assert!(d.apply(&forms[0]).unwrap().is_zero());
                assert!(e.apply(&forms[0]).unwrap().is_zero());
            }
            other => panic!("expected coordinate-kernel branch, got {}", other.name()),
        }
    }

    #[test]
    fn assemble_prefers_user_hint() {
        let tab = VarTable::new([], ["x1", "x2"]).unwrap();
        let d = Derivation::coordinate(&tab, 0);
        let cert = d.certify_lnd(64).unwrap();
        let e = witness_missing_variable(&d, 1).unwrap();
        let hint = Poly::var(&tab, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples = collect_samples(&d, &cert, &[hint.clone()], 0, &mut rng, 64).unwrap();
        let nrc = assemble_certificate(&d, &e, &samples, 64, Provenance::MissingVariable { variable: 1 })
            .unwrap();
        match &nrc.branch {
            Branch::InheritedLnd { sample, image } => {
                assert_eq!(sample.element, hint);
                assert_eq!(sample.origin, SampleOrigin::UserSupplied);
                assert!(image.is_one());
            }
            other => panic!("expected inherited branch, got {}", other.name()),
        }
    }

    #[test]
    fn zero_derivation_resolves_through_generators() {
        let tab = VarTable::new([], ["x1", "x2"]).unwrap();
        let d = Derivation::zero(&tab);
        let cert = d.certify_lnd(64).unwrap();
        let e = witness_missing_variable(&d, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples = collect_samples(&d, &cert, &[], 4, &mut rng, 64).unwrap();
        assert!(samples
            .iter()
            .all(|s| matches!(s.origin, SampleOrigin::Generator { .. })));
        let nrc = assemble_certificate(&d, &e, &samples, 64, Provenance::MissingVariable { variable: 0 })
            .unwrap();
        match &nrc.branch {
            Branch::InheritedLnd { sample, image } => {
                assert_eq!(sample.element, Poly::var(&tab, 0));
                assert!(image.is_one());
            }
            other => panic!("expected inherited branch, got {}", other.name()),
        }
    }

    #[test]
    fn assemble_rejects_bad_witnesses() {
        let tab = VarTable::new([], ["x1", "x2"]).unwrap();
        let d = Derivation::coordinate(&tab, 0);
        assert!(matches!(
            assemble_certificate(&d, &Derivation::zero(&tab), &[], 64, Provenance::Divergence),
            Err(WitnessError::ZeroWitness)
        ));
        let shear = Derivation::new(&tab, vec![Poly::zero(&tab), Poly::var(&tab, 0)]).unwrap();
        assert!(matches!(
            assemble_certificate(&d, &shear, &[], 64, Provenance::Divergence),
            Err(WitnessError::NonCommuting)
        ));
    }

    #[test]
    fn hints_outside_the_kernel_are_rejected() {
        let tab = VarTable::new([], ["x1", "x2"]).unwrap();
        let d = Derivation::coordinate(&tab, 0);
        let cert = d.certify_lnd(64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = collect_samples(&d, &cert, &[Poly::var(&tab, 0)], 0, &mut rng, 64).unwrap_err();
        assert!(matches!(err, WitnessError::HintNotInKernel { .. }));
    }
}
