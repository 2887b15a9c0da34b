use super::dedupe::{dedupe_representatives, DedupeKey};
use super::PipelineError;
use crate::arrangement::Arrangement;
use crate::splitting::kernel::{sweep, SweepOptions};
use crate::splitting::{add_polygon, ConventionOptions};

/// Plinth and pair counts of one arrangement under one convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub convention: ConventionOptions,
    pub plinths: usize,
    /// Plinths with two splitting polygons.
    pub hits: usize,
    pub raw: usize,
    pub lattice: usize,
    pub projective: usize,
}

impl CensusRow {
    /// Whether the counts reproduce `plinths` and, under some dedupe
    /// reading, `pairs`.
    pub fn matches(&self, plinths: usize, pairs: usize) -> bool {
        self.plinths == plinths && [self.hits, self.raw, self.lattice, self.projective].contains(&pairs)
    }
}

/// Sweeps `a` once per convention and counts pairs under every dedupe key.
pub fn convention_census(
    a: &Arrangement,
    length: usize,
    conventions: &[ConventionOptions],
) -> Result<Vec<CensusRow>, PipelineError> {
    let mut rows = Vec::with_capacity(conventions.len());
    for &convention in conventions {
        let mut opts = SweepOptions::new(length, convention);
        opts.find_pairs = true;
        let report = sweep(a, &opts)?;
        let pairs = report
            .pairs
            .iter()
            .map(|h| Ok((add_polygon(a, &h.first)?, add_polygon(a, &h.second)?)))
            .collect::<Result<Vec<_>, PipelineError>>()?;
        let raw = dedupe_representatives(&pairs, DedupeKey::Raw);
        let unique: Vec<_> = raw.iter().map(|&i| pairs[i].clone()).collect();
        rows.push(CensusRow {
            convention,
            plinths: report.stats.plinths,
            hits: pairs.len(),
            raw: raw.len(),
            lattice: dedupe_representatives(&unique, DedupeKey::Lattice).len(),
            projective: dedupe_representatives(&unique, DedupeKey::Projective).len(),
        });
    }
    Ok(rows)
}
