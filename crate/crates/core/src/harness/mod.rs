//! Fixed-polyomino enumeration and batch verification of claims on small instances.

use crate::certificates::{
    check_initial_product, check_lemma_detfk, discussion_order, knutson_certify,
    knutson_polynomial, konig_search, polyomino_ideal, verify_konig, CertError,
    KonigSearchOutcome, Outcome, Verdict, DEFAULT_NODE_LIMIT,
};
use crate::grid::{classify, CellCollection, ClassificationRecord};
use crate::groebner::{reduced_groebner_basis, Budget};
use crate::lattice::{is_prime_binomial, PrimalityVerdict};
use crate::polyring::Polynomial;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub const MAX_ENUMERATION_CELLS: usize = 10;

/// Number of fixed polyominoes with `n` cells, `n = 1..=10`.
pub const FIXED_POLYOMINO_COUNTS: [usize; MAX_ENUMERATION_CELLS] =
    [1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("enumeration supports 1 <= n <= {MAX_ENUMERATION_CELLS}, got {0}")]
    Bound(usize),
    #[error("found {found} fixed polyominoes with {n} cells, expected {expected}")]
    CountMismatch { n: usize, expected: usize, found: usize },
    #[error("unknown claim {0:?}; known claims: {}", Claim::ALL.iter().map(|c| c.name()).collect::<Vec<_>>().join(", "))]
    UnknownClaim(String),
}

/// Every fixed polyomino with exactly `n` cells, translated to start at `(1, 1)`, in
/// ascending order.
pub fn enumerate_fixed(n: usize) -> Result<Vec<CellCollection>, HarnessError> {
    if n == 0 || n > MAX_ENUMERATION_CELLS {
        return Err(HarnessError::Bound(n));
    }
    let mut level: BTreeSet<CellCollection> = BTreeSet::from([CellCollection::from_coords(&[(1, 1)])]);
    for _ in 1..n {
        level = level
            .par_iter()
            .flat_map_iter(grow)
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
    }
    Ok(level.into_iter().collect())
}

/// All one-cell extensions of `p`, normalised.
fn grow(p: &CellCollection) -> Vec<CellCollection> {
    let shifted = p.translate(1, 1).expect("shifting up stays positive");
    let mut out = Vec::new();
    for c in shifted.iter() {
        for nb in c.neighbours() {
            if !shifted.contains(&nb) {
                let mut q = shifted.clone();
                q.insert(nb);
                out.push(q.normalized());
            }
        }
    }
    out
}

/// Enumerates every size up to `n` and compares the counts with the known sequence.
pub fn self_check_counts(n: usize) -> Result<(), HarnessError> {
    for k in 1..=n {
        let found = enumerate_fixed(k)?.len();
        let expected = FIXED_POLYOMINO_COUNTS[k - 1];
        if found != expected {
            return Err(HarnessError::CountMismatch { n: k, expected, found });
        }
    }
    Ok(())
}

/// Hypothesis filters, evaluated through `classify` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    Thin,
    Ladder,
    ThinConditions,
    Simple,
    SimpleThin,
    Parallelogram,
    ThinCellwise,
}

impl Filter {
    pub const ALL: [Filter; 7] = [
        Filter::Thin,
        Filter::Ladder,
        Filter::ThinConditions,
        Filter::Simple,
        Filter::SimpleThin,
        Filter::Parallelogram,
        Filter::ThinCellwise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Thin => "thin",
            Filter::Ladder => "ladder",
            Filter::ThinConditions => "thin-conditions",
            Filter::Simple => "simple",
            Filter::SimpleThin => "simple-thin",
            Filter::Parallelogram => "parallelogram",
            Filter::ThinCellwise => "thin-cellwise",
        }
    }

    pub fn accepts(self, r: &ClassificationRecord) -> bool {
        match self {
            Filter::Thin => r.is_thin,
            Filter::Ladder => r.is_ladder,
            Filter::ThinConditions => r.thin_thm51,
            Filter::Simple => r.is_polyomino && r.is_simple,
            Filter::SimpleThin => r.is_polyomino && r.is_simple && r.is_thin,
            Filter::Parallelogram => r.is_parallelogram,
            Filter::ThinCellwise => r.is_polyomino && r.is_thin && r.thin_cellwise_intersections,
        }
    }
}

impl FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown filter {s:?}"))
    }
}

/// Claims that can be checked instance by instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Ladders: `in(f)` is the product of all vertex variables, and the same holds for `g`.
    LadderInitialProduct,
    /// Ladders: both membership statements for every `f_k` with `C_k` non-empty.
    LadderDetMembership,
    /// Ladders: the Knutson report certifies.
    LadderKnutson,
    /// Ladders: the inner binomials are the reduced basis under the discussion order.
    LadderBasis,
    /// Simple thin polyominoes: a König certificate is found and verifies.
    SimpleThinKonig,
    /// Thin conditions: reduced basis is the generators, squarefree initials, prime.
    ThinBasis,
    /// Thin with cell-sized crossings of maximal intervals: prime.
    ThinCellwisePrime,
    /// Simple polyominoes: prime.
    SimplePrime,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::LadderInitialProduct,
        Claim::LadderDetMembership,
        Claim::LadderKnutson,
        Claim::LadderBasis,
        Claim::SimpleThinKonig,
        Claim::ThinBasis,
        Claim::ThinCellwisePrime,
        Claim::SimplePrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::LadderInitialProduct => "ladder-initial-product",
            Claim::LadderDetMembership => "ladder-det-membership",
            Claim::LadderKnutson => "ladder-knutson",
            Claim::LadderBasis => "ladder-basis",
            Claim::SimpleThinKonig => "simple-thin-konig",
            Claim::ThinBasis => "thin-basis",
            Claim::ThinCellwisePrime => "thin-cellwise-prime",
            Claim::SimplePrime => "simple-prime",
        }
    }

    pub fn filter(self) -> Filter {
        match self {
            Claim::LadderInitialProduct
            | Claim::LadderDetMembership
            | Claim::LadderKnutson
            | Claim::LadderBasis => Filter::Ladder,
            Claim::SimpleThinKonig => Filter::SimpleThin,
            Claim::ThinBasis => Filter::ThinConditions,
            Claim::ThinCellwisePrime => Filter::ThinCellwise,
            Claim::SimplePrime => Filter::Simple,
        }
    }

    /// Runs the claim on one instance that passed the filter.
    pub fn check(self, p: &CellCollection, budget: &Budget) -> InstanceOutcome {
        match self.run(p, budget) {
            Ok(outcome) => outcome,
            Err(e) if e.is_budget() => InstanceOutcome::Skip(e.to_string()),
            Err(e) => InstanceOutcome::Fail(e.to_string()),
        }
    }

    fn run(self, p: &CellCollection, budget: &Budget) -> Result<InstanceOutcome, CertError> {
        let verdict = |ok: bool, why: &str| {
            if ok {
                InstanceOutcome::Pass
            } else {
                InstanceOutcome::Fail(why.to_string())
            }
        };
        Ok(match self {
            Claim::LadderInitialProduct => {
                let c = check_initial_product(p)?;
                if !c.passed {
                    verdict(false, "in(f) differs from the vertex product")
                } else {
                    verdict(c.g_passed, "in(g) differs from its vertex product")
                }
            }
            Claim::LadderDetMembership => {
                let kp = knutson_polynomial(p)?;
                for f in kp.factors.iter().filter(|f| !f.block.cells.is_empty()) {
                    if !check_lemma_detfk(p, f.block.k, budget)?.passed() {
                        return Ok(InstanceOutcome::Fail(format!(
                            "membership fails for k = {}",
                            f.block.k
                        )));
                    }
                }
                InstanceOutcome::Pass
            }
            Claim::LadderKnutson => {
                let r = knutson_certify(p, budget)?;
                match r.verdict {
                    Verdict::Certified { .. } => InstanceOutcome::Pass,
                    _ if r.attempts.iter().any(|a| a.outcome == Outcome::Skipped) => {
                        InstanceOutcome::Skip("a route ran out of budget".into())
                    }
                    _ => InstanceOutcome::Fail("not certified without proxies".into()),
                }
            }
            Claim::LadderBasis => verdict(basis_is_generators(p, budget)?, "basis differs"),
            Claim::SimpleThinKonig => match konig_search(p, DEFAULT_NODE_LIMIT)? {
                KonigSearchOutcome::Found(cert) => verdict(
                    verify_konig(p, &cert, budget)?.passed(),
                    "certificate does not verify",
                ),
                KonigSearchOutcome::NodeLimit { nodes } => {
                    InstanceOutcome::Skip(format!("node limit after {nodes} nodes"))
                }
                KonigSearchOutcome::Exhausted { .. } => {
                    InstanceOutcome::Fail("no certificate found".into())
                }
            },
            Claim::ThinBasis => {
                if !basis_is_generators(p, budget)? {
                    return Ok(InstanceOutcome::Fail("basis differs from the generators".into()));
                }
                prime_check(p, budget)?
            }
            Claim::ThinCellwisePrime | Claim::SimplePrime => prime_check(p, budget)?,
        })
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::UnknownClaim(s.to_string()))
    }
}

fn basis_is_generators(p: &CellCollection, budget: &Budget) -> Result<bool, CertError> {
    let order = discussion_order(p);
    let ideal = polyomino_ideal(p);
    let gb = reduced_groebner_basis(&ideal.presentation(), &order, budget)?;
    let monic = |ps: &[Polynomial]| -> BTreeSet<String> {
        ps.iter().map(|g| g.monic(&order).to_text(&order)).collect()
    };
    let gens: Vec<Polynomial> = ideal.binomials.into_iter().map(|b| b.polynomial).collect();
    let squarefree = gb.initial_monomials().iter().all(|m| m.is_squarefree());
    Ok(squarefree && gb.elements.len() == gens.len() && monic(&gb.elements) == monic(&gens))
}

fn prime_check(p: &CellCollection, budget: &Budget) -> Result<InstanceOutcome, CertError> {
    Ok(match is_prime_binomial(&polyomino_ideal(p).presentation(), budget)? {
        PrimalityVerdict::Prime => InstanceOutcome::Pass,
        PrimalityVerdict::NotPrime { witness } => {
            InstanceOutcome::Fail(format!("not prime, witness {witness}"))
        }
        PrimalityVerdict::Inconclusive { reason } => InstanceOutcome::Skip(reason),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "kebab-case")]
pub enum InstanceOutcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TallyRow {
    pub claim: Claim,
    pub n: usize,
    pub instances: usize,
    pub passes: usize,
    pub fails: usize,
    pub skips: usize,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub n: usize,
    /// Position of the instance in the enumeration of size `n`.
    pub index: usize,
    pub cells: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub claim: Claim,
    pub rows: Vec<TallyRow>,
    /// The first failing instance; the batch stops at the size where it occurred.
    pub failure: Option<FailureRecord>,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn totals(&self) -> (usize, usize, usize) {
        self.rows.iter().fold((0, 0, 0), |(p, f, s), r| {
            (p + r.passes, f + r.fails, s + r.skips)
        })
    }

    /// `claim,n,passes,fails,skips,wall_ms` with a header line.
    pub fn to_csv(&self, with_time: bool) -> String {
        let mut out = String::from("claim,n,passes,fails,skips,wall_ms\n");
        for r in &self.rows {
            let t = if with_time { r.wall_ms.to_string() } else { String::new() };
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.claim, r.n, r.passes, r.fails, r.skips, t
            ));
        }
        out
    }
}

/// `(i,j) (i,j) …` on one line.
pub fn cells_inline(p: &CellCollection) -> String {
    p.to_inline()
}

/// Runs `claim` on every polyomino with at most `n_max` cells that passes its filter.
pub fn batch_verify(claim: Claim, n_max: usize, budget: &Budget) -> Result<BatchReport, HarnessError> {
    let mut report = BatchReport {
        claim,
        rows: Vec::new(),
        failure: None,
    };
    for n in 1..=n_max {
        let start = Instant::now();
        let all = enumerate_fixed(n)?;
        let expected = FIXED_POLYOMINO_COUNTS[n - 1];
        if all.len() != expected {
            return Err(HarnessError::CountMismatch {
                n,
                expected,
                found: all.len(),
            });
        }
        let filter = claim.filter();
        let chosen: Vec<(usize, &CellCollection)> = all
            .iter()
            .enumerate()
            .filter(|(_, p)| filter.accepts(&classify(p)))
            .collect();
        let outcomes: Vec<InstanceOutcome> = chosen
            .par_iter()
            .map(|(_, p)| claim.check(p, budget))
            .collect();
        let mut row = TallyRow {
            claim,
            n,
            instances: chosen.len(),
            passes: 0,
            fails: 0,
            skips: 0,
            wall_ms: 0,
        };
        for ((index, p), outcome) in chosen.iter().zip(&outcomes) {
            match outcome {
                InstanceOutcome::Pass => row.passes += 1,
                InstanceOutcome::Skip(_) => row.skips += 1,
                InstanceOutcome::Fail(detail) => {
                    row.fails += 1;
                    if report.failure.is_none() {
                        report.failure = Some(FailureRecord {
                            n,
                            index: *index,
                            cells: cells_inline(p),
                            detail: detail.clone(),
                        });
                    }
                }
            }
        }
        row.wall_ms = start.elapsed().as_millis();
        report.rows.push(row);
        if report.failure.is_some() {
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        self_check_counts(6).unwrap();
        assert!(enumerate_fixed(0).is_err());
        assert!(enumerate_fixed(11).is_err());
    }

    #[test]
    fn dominoes() {
        let two = enumerate_fixed(2).unwrap();
        assert_eq!(
            two,
            vec![
                CellCollection::from_coords(&[(1, 1), (2, 1)]),
                CellCollection::from_coords(&[(1, 1), (1, 2)]),
            ]
        );
    }

    #[test]
    fn names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.name().parse::<Claim>().unwrap(), c);
        }
        assert!("nope".parse::<Claim>().is_err());
    }

    #[test]
    fn ladder_initial_product_up_to_five() {
        let r = batch_verify(Claim::LadderInitialProduct, 5, &Budget::default()).unwrap();
        assert!(r.passed());
        let (passes, fails, _) = r.totals();
        assert!(passes > 0);
        assert_eq!(fails, 0);
        assert!(r.to_csv(false).starts_with("claim,n,passes"));
    }
}
