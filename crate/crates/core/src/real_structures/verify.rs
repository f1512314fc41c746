use crate::algebra::{AlgebraSignature, SuperNumber};
use crate::error::{Error, Result};
use crate::lie::{random_point, FunctorPoint};
use crate::morphism::{adjoin_dual, dual_generator, dual_scaling, naturality_battery};
use crate::report::{witness, Check, VerificationReport, Witness};
use crate::sampling::{self, rng_for};

use super::RealStructureDescriptor;

/// Sampling parameters shared by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Summands per random A-point.
    pub terms: usize,
}

impl VerifyOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, terms: 3 }
    }
}

/// Records the first failure of a check; later samples are skipped once it failed.
pub(crate) struct Tracker {
    pub(crate) name: &'static str,
    failure: Option<Witness>,
}

impl Tracker {
    pub(crate) fn new(name: &'static str) -> Self {
        Self { name, failure: None }
    }

    pub(crate) fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub(crate) fn run(&mut self, sample: usize, f: impl FnOnce() -> Result<Option<Witness>>) {
        if self.failed() {
            return;
        }
        let outcome = match f() {
            Ok(w) => w,
            Err(e) => Some(witness([("error", e.to_string())])),
        };
        if let Some(mut w) = outcome {
            w.insert("sample".into(), sample.to_string());
            self.failure = Some(w);
        }
    }

    pub(crate) fn into_check(self) -> Check {
        Check::from_outcome(self.name, self.failure)
    }
}

/// `None` when equal, otherwise a witness holding the input and both sides.
pub(crate) fn compare<T: PartialEq + std::fmt::Debug>(
    input: &dyn std::fmt::Debug,
    lhs: &T,
    rhs: &T,
) -> Option<Witness> {
    (lhs != rhs)
        .then(|| witness([("input", format!("{input:?}")), ("lhs", format!("{lhs:?}")), ("rhs", format!("{rhs:?}"))]))
}

fn scaled(x: &FunctorPoint, a: &SuperNumber) -> Result<FunctorPoint> {
    FunctorPoint::new(*x.kind(), x.matrix().left_scale(a)?)
}

fn block_part(x: &FunctorPoint, diag: bool) -> Result<FunctorPoint> {
    FunctorPoint::new(*x.kind(), x.matrix().block_part(diag))
}

/// Checks that `d` defines a real structure on the A-points over `sig`: the image stays in the
/// algebra, and antilinearity over `A₀`, involutivity, the bracket rule, evenness and
/// naturality (a battery of conjugation-compatible morphisms plus `v_a` on `A(ε)`) hold
/// exactly on every sample.
pub fn verify_real_structure(
    d: &RealStructureDescriptor,
    sig: &AlgebraSignature,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    if sig.conjugation() != d.conjugation() {
        return Err(Error::InapplicableDescriptor(format!(
            "{} needs {} conjugation, the algebra has {}",
            d.full_name(),
            d.conjugation(),
            sig.conjugation()
        )));
    }
    let kind = *d.kind();
    let expr = d.expr();
    let phi = |x: &FunctorPoint| expr.eval(x);
    let battery = naturality_battery(*sig)?;
    let dual = adjoin_dual(*sig).ok();

    let mut membership = Tracker::new("membership");
    let mut antilinear = Tracker::new("antilinearity");
    let mut involutive = Tracker::new("involutivity");
    let mut bracket = Tracker::new("bracket");
    let mut evenness = Tracker::new("evenness");
    let mut natural = Tracker::new("naturality");

    let label = format!("verify/{}/{}", d.full_name(), sig.describe());
    for s in 0..opts.samples {
        let mut rng = rng_for(opts.seed, &label, s as u64);
        let x = random_point(&kind, sig, &mut rng, opts.terms);
        let y = random_point(&kind, sig, &mut rng, opts.terms);
        let a = sampling::homogeneous(&mut rng, sig, false, 2);
        let b = sampling::homogeneous(&mut rng, sig, false, 2);

        let mut images = None;
        membership.run(s, || {
            images = Some((phi(&x)?, phi(&y)?));
            Ok(None)
        });
        let Some((fx, fy)) = images else { continue };

        antilinear.run(s, || {
            let lhs = phi(&scaled(&x, &a)?.add(&scaled(&y, &b)?)?)?;
            let rhs = scaled(&fx, &a.conjugate())?.add(&scaled(&fy, &b.conjugate())?)?;
            Ok(compare(&(&a, &x, &b, &y), &lhs, &rhs))
        });
        involutive.run(s, || Ok(compare(&x, &phi(&fx)?, &x)));
        bracket.run(s, || {
            let lhs = phi(&x.bracket(&y)?)?;
            let rhs = fx.bracket(&fy)?;
            Ok(compare(&(&x, &y), &lhs, &rhs))
        });
        evenness.run(s, || {
            if !fx.matrix().is_even() {
                return Ok(Some(witness([("input", format!("{x:?}")), ("image", format!("{fx:?}"))])));
            }
            for diag in [true, false] {
                let part = block_part(&x, diag)?;
                let img = phi(&part)?;
                let kept = if diag { img.matrix().is_block_diagonal() } else { img.matrix().is_block_off_diagonal() };
                if !kept {
                    return Ok(Some(witness([("input", format!("{part:?}")), ("image", format!("{img:?}"))])));
                }
            }
            Ok(None)
        });
        natural.run(s, || {
            for f in &battery {
                let lhs = phi(&x.map(f)?)?;
                let rhs = fx.map(f)?;
                if let Some(mut w) = compare(&x, &lhs, &rhs) {
                    w.insert("morphism".into(), f.name().to_string());
                    return Ok(Some(w));
                }
            }
            if let Some((ext, incl, _)) = &dual {
                let r = sampling::homogeneous(&mut rng, sig, false, 2);
                let half = crate::scalar::GaussianRational::from_ratio(1, 2);
                let real = (&r + &r.conjugate()).scale(&half);
                let va = dual_scaling(*ext, dual_generator(ext)?, &incl.apply(&real)?)?;
                let z = random_point(&kind, ext, &mut rng, opts.terms);
                let lhs = phi(&z.map(&va)?)?;
                let rhs = phi(&z)?.map(&va)?;
                if let Some(mut w) = compare(&z, &lhs, &rhs) {
                    w.insert("morphism".into(), va.name().to_string());
                    return Ok(Some(w));
                }
            }
            Ok(None)
        });
    }

    let mut report = VerificationReport::new();
    for t in [membership, antilinear, involutive, bracket, evenness, natural] {
        let mut c = t.into_check();
        if d.failures_are_flagged() {
            c = c.flag_failure(d.notes().first().copied().unwrap_or_default());
        }
        report.push(c);
    }
    for note in d.notes() {
        if note != super::NOTE_SL_CENTER {
            report.push(Check::flagged("interpretation", note));
        }
    }
    Ok(report)
}
