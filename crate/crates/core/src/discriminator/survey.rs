use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verdict::{sc_verdict, Tri, VerdictOptions};
use crate::algebra::{all_subuniverses, FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::free::GeneratingClass;
use crate::limits::{checked_pow, Limits};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySample {
    pub index: usize,
    pub trivial: bool,
    pub discriminator: Tri,
    pub no_proper_nontrivial_subalgebra: Tri,
    pub sc: Tri,
    pub capacity_exceeded: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyCounts {
    pub trivial: usize,
    pub with_discriminator: usize,
    pub without_discriminator: usize,
    pub discriminator_unknown: usize,
    pub no_proper_nontrivial_subalgebra: usize,
    pub sc_yes: usize,
    pub sc_no: usize,
    pub sc_unknown: usize,
    pub capacity_exceeded: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyFractions {
    pub discriminator: f64,
    pub no_proper_nontrivial_subalgebra: f64,
    pub sc_yes: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub size: usize,
    pub arities: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub counts: SurveyCounts,
    pub fractions: SurveyFractions,
}

/// Operation tables drawn uniformly from the stream `index` of the seed, one
/// symbol `f<i>` per arity.
pub fn random_algebra(size: usize, arities: &[usize], seed: u64, index: u64) -> Result<FiniteAlgebra> {
    let names: Vec<(String, usize)> = arities.iter().enumerate().map(|(i, &a)| (format!("f{i}"), a)).collect();
    let sig = Signature::from_pairs(&names)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut tables = Vec::with_capacity(arities.len());
    for &a in arities {
        let len = checked_pow(size, a)
            .filter(|&l| l <= Limits::default().table_entries)
            .ok_or_else(|| Error::capacity("random table entries", Limits::default().table_entries, usize::MAX))?;
        tables.push((0..len).map(|_| rng.gen_range(0..size)).collect());
    }
    FiniteAlgebra::new(sig, size, tables)
}

fn sample(size: usize, arities: &[usize], seed: u64, index: usize, limits: &Limits) -> Result<SurveySample> {
    let alg = random_algebra(size, arities, seed, index as u64)?;
    let mut s = SurveySample {
        index,
        trivial: alg.is_trivial(),
        discriminator: Tri::Unknown,
        no_proper_nontrivial_subalgebra: Tri::Unknown,
        sc: Tri::Unknown,
        capacity_exceeded: false,
    };
    if s.trivial {
        return Ok(s);
    }
    match all_subuniverses(&alg, limits) {
        Ok(subs) => {
            let proper = subs.iter().any(|u| u.len() >= 2 && u.len() < size);
            s.no_proper_nontrivial_subalgebra = if proper { Tri::No } else { Tri::Yes };
        }
        Err(e) if e.is_capacity() => s.capacity_exceeded = true,
        Err(e) => return Err(e),
    }
    let class = GeneratingClass::single(alg);
    let v = sc_verdict(
        &class,
        &VerdictOptions {
            limits: *limits,
            refutation: None,
        },
    )?;
    s.discriminator = v.discriminator;
    s.sc = v.sc;
    s.capacity_exceeded |= !v.notes.is_empty();
    Ok(s)
}

/// Samples random algebras of the given size and operation arities and counts
/// how many have a discriminator term, no proper nontrivial subalgebra, and a
/// positive SC verdict. Samples run in parallel; each draws from its own
/// stream of the seed, so the report depends only on the arguments.
pub fn murskii_survey(
    size: usize,
    arities: &[usize],
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Result<SurveyReport> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    if size == 0 {
        return Err(Error::Precondition("algebras need a nonempty carrier".into()));
    }
    let results: Vec<SurveySample> = (0..samples)
        .into_par_iter()
        .map(|i| sample(size, arities, seed, i, limits))
        .collect::<Result<_>>()?;
    let mut c = SurveyCounts::default();
    for s in &results {
        if s.trivial {
            c.trivial += 1;
            continue;
        }
        match s.discriminator {
            Tri::Yes => c.with_discriminator += 1,
            Tri::No => c.without_discriminator += 1,
            Tri::Unknown => c.discriminator_unknown += 1,
        }
        if s.no_proper_nontrivial_subalgebra == Tri::Yes {
            c.no_proper_nontrivial_subalgebra += 1;
        }
        match s.sc {
            Tri::Yes => c.sc_yes += 1,
            Tri::No => c.sc_no += 1,
            Tri::Unknown => c.sc_unknown += 1,
        }
        if s.capacity_exceeded {
            c.capacity_exceeded += 1;
        }
    }
    let frac = |k: usize| k as f64 / samples as f64;
    Ok(SurveyReport {
        size,
        arities: arities.to_vec(),
        samples,
        seed,
        fractions: SurveyFractions {
            discriminator: frac(c.with_discriminator),
            no_proper_nontrivial_subalgebra: frac(c.no_proper_nontrivial_subalgebra),
            sc_yes: frac(c.sc_yes),
        },
        counts: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_element_samples_are_trivial() {
        let r = murskii_survey(1, &[2], 5, DEFAULT_SEED, &Limits::default()).unwrap();
        assert_eq!(r.counts.trivial, 5);
        assert_eq!(r.fractions.discriminator, 0.0);
    }

    #[test]
    fn deterministic() {
        let a = murskii_survey(2, &[2], 20, 7, &Limits::default()).unwrap();
        let b = murskii_survey(2, &[2], 20, 7, &Limits::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn streams_differ() {
        let a = random_algebra(3, &[2], 1, 0).unwrap();
        let b = random_algebra(3, &[2], 1, 1).unwrap();
        assert_ne!(a, b);
    }
}
