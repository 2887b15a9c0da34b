use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{
    classify_pair, ArithmeticMode, Classification, DeltaRecord, Factorization, PairCertificate, PipelineError,
    RigidityRecord, StageRecord,
};
use crate::arrangement::{
    candidate_lines_through_pairs, combinatorics, projectively_equivalent, tangent_dimension, Arrangement, ArrangementError,
};
use crate::numberfield::{discriminant, Field, FieldDescriptor};
use crate::projgeom::ProjLine;
use crate::splitting::kernel::{sweep, PairHit, SweepOptions};
use crate::splitting::{
    add_polygon, delta_polynomial, find_nonsplitting_polygon, find_splitting_polygons, splitting_from_delta,
    validate_plinth, ConventionOptions, Plinth, SplittingOutcome, DEFAULT_NONSPLITTING_CAP,
};

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub length: usize,
    pub convention: ConventionOptions,
    /// Depth bound of the extra-line search.
    pub max_extra_lines: usize,
    /// Root polygon (1 or 2) of the first stage that the second stage
    /// builds on.
    pub branch: usize,
    pub arithmetic_mode: ArithmeticMode,
    pub nonsplitting_cap: usize,
    /// Only try these plinths in the first stage.
    pub first_plinths: Option<Vec<Plinth>>,
    /// Only add extra lines from this list.
    pub extra_line_pool: Option<Vec<ProjLine>>,
    /// Only try these plinths in the final stage.
    pub final_plinths: Option<Vec<Plinth>>,
    /// Skip a first stage whose arrangement is projectively equivalent to
    /// an earlier one; its search would return images of the same pairs.
    pub first_stage_dedupe: bool,
}

impl PipelineConfig {
    pub fn new(length: usize) -> Self {
        PipelineConfig {
            length,
            convention: ConventionOptions::default(),
            max_extra_lines: 2,
            branch: 1,
            arithmetic_mode: ArithmeticMode::Literal,
            nonsplitting_cap: DEFAULT_NONSPLITTING_CAP,
            first_plinths: None,
            extra_line_pool: None,
            final_plinths: None,
            first_stage_dedupe: true,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.length < 3 {
            return Err(PipelineError::Precondition(format!("length {} is below 3", self.length)));
        }
        if self.branch != 1 && self.branch != 2 {
            return Err(PipelineError::Precondition(format!("branch must be 1 or 2, got {}", self.branch)));
        }
        Ok(())
    }
}

/// Counters and notes gathered during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLog {
    /// First-stage plinths with irreducible polynomial.
    pub irreducible_plinths: usize,
    /// Distinct arithmetic pairs the second stage was run on.
    pub first_stages: usize,
    /// Arrangements swept, over all extra-line searches.
    pub nodes: usize,
    /// Plinths with two splitting polygons before classification.
    pub hits: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub certificates: Vec<PairCertificate>,
    pub log: RunLog,
}

/// An arrangement reached by the extra-line search and what `eval` found.
struct Found<T> {
    extra: Vec<ProjLine>,
    node: Arrangement,
    tangent: usize,
    items: Vec<T>,
}

/// Breadth-first search over added lines, one level at a time. A node is
/// expanded only when `eval` finds nothing on it; `eval` gets the index of
/// the newest line so it may skip plinths already settled at the parent.
fn extra_line_search<T: Send>(
    root: &Arrangement,
    cfg: &PipelineConfig,
    log: &mut RunLog,
    eval: impl Fn(&Arrangement, Option<usize>) -> Result<Vec<T>, PipelineError> + Sync,
) -> Result<Vec<Found<T>>, PipelineError> {
    let mut visited: BTreeSet<BTreeSet<ProjLine>> = BTreeSet::new();
    visited.insert(BTreeSet::new());
    let mut level: Vec<Vec<ProjLine>> = vec![Vec::new()];
    let mut out = Vec::new();
    while !level.is_empty() {
        let evaluated: Vec<Result<(Found<T>, bool), PipelineError>> = level
            .into_par_iter()
            .map(|extra| {
                let node = root.extended(&extra, None)?;
                let tangent = tangent_dimension(&node)?;
                let usable = extra.is_empty() || tangent == 0;
                let newest = (!extra.is_empty()).then(|| node.len() - 1);
                let items = if usable { eval(&node, newest)? } else { Vec::new() };
                Ok((
                    Found {
                        extra,
                        node,
                        tangent,
                        items,
                    },
                    usable,
                ))
            })
            .collect();
        let mut next = Vec::new();
        for r in evaluated {
            let (found, usable) = r?;
            log.nodes += 1;
            if !usable {
                log.notes.push(format!(
                    "skipped node with {} lines: tangent dimension {}",
                    found.node.len(),
                    found.tangent
                ));
                continue;
            }
            if !found.items.is_empty() {
                out.push(found);
                continue;
            }
            if found.extra.len() >= cfg.max_extra_lines {
                continue;
            }
            for l in candidate_lines_through_pairs(&found.node) {
                if cfg.extra_line_pool.as_ref().is_some_and(|pool| !pool.contains(&l)) {
                    continue;
                }
                let mut e = found.extra.clone();
                e.push(l);
                if visited.insert(e.iter().cloned().collect()) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    Ok(out)
}

fn involves(psi: &Plinth, line: Option<usize>) -> bool {
    match line {
        None => true,
        Some(m) => psi.support.contains(&m) || psi.pivots.iter().any(|p| p.contains(&m)),
    }
}

fn restricted<'a>(a: &Arrangement, list: &'a [Plinth], newest: Option<usize>) -> impl Iterator<Item = &'a Plinth> {
    let c = combinatorics(a);
    list.iter()
        .filter(move |p| {
            let n = c.n_lines();
            let in_range = p.support.iter().chain(p.pivots.iter().flatten()).all(|&i| i < n);
            in_range && validate_plinth(&c, p).ok()
        })
        .filter(move |p| involves(p, newest))
}

/// Plinths of `a` whose polynomial splits with two splitting polygons.
fn pair_hits(a: &Arrangement, newest: Option<usize>, cfg: &PipelineConfig) -> Result<Vec<PairHit>, PipelineError> {
    if let Some(list) = &cfg.final_plinths {
        let mut out = Vec::new();
        for psi in restricted(a, list, newest) {
            if let SplittingOutcome::Pairs { delta, first, second } = find_splitting_polygons(a, psi) {
                out.push(PairHit {
                    plinth: psi.clone(),
                    delta,
                    first,
                    second,
                });
            }
        }
        return Ok(out);
    }
    let mut opts = SweepOptions::new(cfg.length, cfg.convention);
    opts.find_pairs = true;
    opts.involve_line = newest;
    Ok(sweep(a, &opts)?.pairs)
}

/// Output of steps (2)-(4): the arithmetic pair over the canonical
/// presentation of the splitting field.
struct FirstStage {
    node: Arrangement,
    extra: Vec<ProjLine>,
    record: StageRecord,
}

fn irreducible_plinths(a: &Arrangement, newest: Option<usize>, cfg: &PipelineConfig) -> Result<Vec<Plinth>, PipelineError> {
    if let Some(list) = &cfg.first_plinths {
        return Ok(restricted(a, list, newest).cloned().collect());
    }
    let mut opts = SweepOptions::new(cfg.length, cfg.convention);
    opts.collect_irreducible = true;
    opts.involve_line = newest;
    Ok(sweep(a, &opts)?.irreducible)
}

/// Steps (3)-(4) on one plinth of a rational arrangement.
fn first_stage(node: &Arrangement, psi: &Plinth) -> Result<Option<(Field, StageRecord)>, PipelineError> {
    let d = delta_polynomial(node, psi)?;
    if d.degree() != Some(2) {
        return Ok(None);
    }
    let disc = discriminant(&d.poly);
    let class = match disc.as_rational().and_then(|q| q.squarefree_class()) {
        Some(k) if k != 1.into() => k,
        _ => return Ok(None),
    };
    let field = FieldDescriptor::quadratic_from_class(&class)?;
    let lifted = node.embed(&field)?;
    let d_lifted = delta_polynomial(&lifted, psi)?;
    let (first, second) = match splitting_from_delta(&lifted, psi, d_lifted) {
        SplittingOutcome::Pairs { first, second, .. } => (first, second),
        _ => return Ok(None),
    };
    let record = StageRecord {
        on_lines: node.len(),
        plinth: psi.clone(),
        delta: DeltaRecord::from(&d),
        factorization: Factorization::Irreducible {
            discriminant_class: class,
            roots: [first.lambda.clone(), second.lambda.clone()],
        },
        polygons: [first, second],
    };
    Ok(Some((field, record)))
}

fn first_stages(a: &Arrangement, cfg: &PipelineConfig, log: &mut RunLog) -> Result<Vec<FirstStage>, PipelineError> {
    let found = extra_line_search(a, cfg, log, |node, newest| {
        let plinths = irreducible_plinths(node, newest, cfg)?;
        let mut out = Vec::with_capacity(plinths.len());
        for psi in &plinths {
            out.push(first_stage(node, psi)?);
        }
        Ok(out)
    })?;
    let mut seen: BTreeSet<BTreeSet<BTreeSet<ProjLine>>> = BTreeSet::new();
    let mut stages = Vec::new();
    for f in found {
        log.irreducible_plinths += f.items.len();
        for (field, record) in f.items.into_iter().flatten() {
            let key = record
                .polygons
                .iter()
                .map(|p| p.lines.iter().cloned().collect::<BTreeSet<_>>())
                .collect();
            if !seen.insert(key) {
                continue;
            }
            let extra = f
                .extra
                .iter()
                .map(|l| l.embed(&field))
                .collect::<Result<_, _>>()
                .map_err(ArrangementError::from)?;
            stages.push(FirstStage {
                node: f.node.embed(&field)?,
                extra,
                record,
            });
        }
    }
    Ok(stages)
}

fn rigidity(stage: &str, a: &Arrangement) -> Result<RigidityRecord, PipelineError> {
    Ok(RigidityRecord {
        stage: stage.to_string(),
        lines: a.len(),
        dimension: tangent_dimension(a)?,
    })
}

struct Assembly<'a> {
    base: &'a Arrangement,
    earlier: Vec<StageRecord>,
    extra_before: Vec<ProjLine>,
    rigidity: Vec<RigidityRecord>,
    want_nonarithmetic: bool,
    cfg: &'a PipelineConfig,
}

impl Assembly<'_> {
    /// A certificate for one hit, or the reason it was dropped.
    fn certificate(&self, found: &Found<PairHit>, hit: &PairHit) -> Result<Result<PairCertificate, String>, PipelineError> {
        let node = &found.node;
        let final1 = add_polygon(node, &hit.first)?;
        let final2 = add_polygon(node, &hit.second)?;
        let (classification, arithmetic) = classify_pair(&final1, &final2, self.cfg.arithmetic_mode);
        let describe = || format!("plinth {:?} on {} lines", hit.plinth, node.len());
        if self.want_nonarithmetic && classification != Classification::Nonarithmetic {
            return Ok(Err(format!("{}: dropped, pair is {}", describe(), classification.name())));
        }
        let witness = match find_nonsplitting_polygon(node, &hit.plinth, &hit.delta, self.cfg.nonsplitting_cap) {
            Ok(p) => p,
            Err(e) => return Ok(Err(format!("{}: dropped, {e}", describe()))),
        };
        let mut rig = self.rigidity.clone();
        rig.push(RigidityRecord {
            stage: "intermediate".into(),
            lines: node.len(),
            dimension: found.tangent,
        });
        rig.push(rigidity("final 1", &final1)?);
        rig.push(rigidity("final 2", &final2)?);
        let mut chain = self.earlier.clone();
        chain.push(StageRecord {
            on_lines: node.len(),
            plinth: hit.plinth.clone(),
            delta: DeltaRecord::from(&hit.delta),
            factorization: Factorization::Split {
                roots: [hit.first.lambda.clone(), hit.second.lambda.clone()],
            },
            polygons: [hit.first.clone(), hit.second.clone()],
        });
        let mut extra_lines = self.extra_before.clone();
        extra_lines.extend(found.extra.iter().cloned());
        Ok(Ok(PairCertificate {
            base: self.base.clone(),
            extra_lines,
            plinth_chain: chain,
            branch: self.cfg.branch,
            final_pair: (final1, final2),
            classification,
            arithmetic,
            rigidity: rig,
            nonsplitting_witness: witness,
        }))
    }
}

fn require_rigid(a: &Arrangement) -> Result<RigidityRecord, PipelineError> {
    let r = rigidity("base", a)?;
    if r.dimension != 0 {
        return Err(PipelineError::NotRigid(r.dimension));
    }
    Ok(r)
}

/// Steps (5)-(8) from `start`, collecting certificates.
fn final_stage(
    start: &Arrangement,
    asm: &Assembly<'_>,
    log: &mut RunLog,
    out: &mut Vec<PairCertificate>,
) -> Result<(), PipelineError> {
    let cfg = asm.cfg;
    let found = extra_line_search(start, cfg, log, |node, newest| pair_hits(node, newest, cfg))?;
    let jobs: Vec<(&Found<PairHit>, &PairHit)> = found.iter().flat_map(|f| f.items.iter().map(move |h| (f, h))).collect();
    let built: Vec<_> = jobs.par_iter().map(|(f, h)| asm.certificate(f, h)).collect();
    for b in built {
        log.hits += 1;
        match b? {
            Ok(c) => out.push(c),
            Err(note) => log.notes.push(note),
        }
    }
    Ok(())
}

/// Nonarithmetic pairs from a rigid arrangement.
///
/// A rational input runs the whole construction; an input over a quadratic
/// field is taken as an arithmetic-pair member and starts at the second
/// stage.
pub fn run_algorithm_nonarithmetic(a: &Arrangement, cfg: &PipelineConfig) -> Result<PipelineRun, PipelineError> {
    cfg.validate()?;
    let base_rigidity = require_rigid(a)?;
    let mut log = RunLog::default();
    let mut certificates = Vec::new();
    if !a.field().is_rational() {
        let asm = Assembly {
            base: a,
            earlier: Vec::new(),
            extra_before: Vec::new(),
            rigidity: vec![base_rigidity],
            want_nonarithmetic: true,
            cfg,
        };
        final_stage(a, &asm, &mut log, &mut certificates)?;
    } else {
        let stages = first_stages(a, cfg, &mut log)?;
        if stages.is_empty() {
            return Err(PipelineError::SearchExhausted(
                "no plinth with irreducible polynomial and splitting polygons".into(),
            ));
        }
        let mut starts: Vec<Arrangement> = Vec::new();
        for st in stages {
            let chosen = &st.record.polygons[cfg.branch - 1];
            let start = add_polygon(&st.node, chosen)?;
            if cfg.first_stage_dedupe {
                if let Some(k) = starts.iter().position(|s| projectively_equivalent(s, &start).is_some()) {
                    log.notes.push(format!(
                        "first stage on {:?} is projectively equivalent to first stage {}",
                        st.record.plinth,
                        k + 1
                    ));
                    continue;
                }
            }
            starts.push(start.clone());
            log.first_stages += 1;
            let rig = vec![base_rigidity.clone(), rigidity("first stage", &start)?];
            if rig[1].dimension != 0 {
                log.notes.push(format!("first stage on {:?} is not rigid", st.record.plinth));
                continue;
            }
            let asm = Assembly {
                base: a,
                earlier: vec![st.record.clone()],
                extra_before: st.extra.clone(),
                rigidity: rig,
                want_nonarithmetic: true,
                cfg,
            };
            final_stage(&start, &asm, &mut log, &mut certificates)?;
        }
    }
    Ok(PipelineRun { certificates, log })
}

/// Rational pairs: plinths of a rigid rational arrangement whose polynomial
/// has two rational roots, both giving splitting polygons.
pub fn run_algorithm_rational(a: &Arrangement, cfg: &PipelineConfig) -> Result<PipelineRun, PipelineError> {
    cfg.validate()?;
    if !a.field().is_rational() {
        return Err(PipelineError::Precondition("rational construction needs an arrangement over Q".into()));
    }
    let base_rigidity = require_rigid(a)?;
    let mut log = RunLog::default();
    let mut certificates = Vec::new();
    let asm = Assembly {
        base: a,
        earlier: Vec::new(),
        extra_before: Vec::new(),
        rigidity: vec![base_rigidity],
        want_nonarithmetic: false,
        cfg,
    };
    final_stage(a, &asm, &mut log, &mut certificates)?;
    Ok(PipelineRun { certificates, log })
}
