//! Combinatorial certificate for the two-band-set double slicing criterion.
//!
//! After all bands of one set are attached, each band leaves behind an
//! unknotted component made from its two twist boxes, and the one unpaired
//! box carries the remaining one-box pretzel. A band of the other set then
//! touches the components of the two boxes it cancels. Certification
//! checks that every such attachment joins two distinct components, so the
//! component count drops `n+1, n, ..., 1` in both directions.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{AuxGraph, PathVerdict};
use crate::pairing::{pair_iterative, BandMatching, Direction, Pair};
use crate::partition::{Partition, UnionFind};
use crate::sequence::{Mode, SignSeq};

/// Components of `K * matching`: one block per band, one per unmatched box.
pub fn components_after(matching: &BandMatching) -> Partition {
    let blocks = matching
        .pairs
        .iter()
        .map(|p| vec![p.minus, p.plus])
        .chain(matching.unmatched.iter().map(|&v| vec![v]))
        .collect();
    Partition::from_blocks(matching.len(), blocks)
}

/// Component counts and fusion flags while bands are attached one by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    /// Component count before any band, then after each band.
    pub counts: Vec<usize>,
    pub fusions: Vec<bool>,
    /// Bands in the order attached.
    pub bands: Vec<Pair>,
    /// Vertex partition after the last band.
    #[serde(skip)]
    pub final_blocks: Partition,
}

impl Attachment {
    pub fn first_non_fusion(&self) -> Option<(usize, Pair)> {
        self.fusions
            .iter()
            .position(|f| !f)
            .map(|k| (k, self.bands[k]))
    }

    pub fn all_fusions(&self) -> bool {
        self.fusions.iter().all(|&f| f)
    }
}

/// Attach `bands` in the given `order` (indices into `bands.pairs`) to a
/// link whose components are `base` plus `extra` components that no band
/// touches.
///
/// A band fuses when its two boxes lie in different components; a band on a
/// single component leaves the block structure unchanged and is flagged.
pub fn attach_bands(
    base: &Partition,
    extra: usize,
    bands: &BandMatching,
    order: &[usize],
) -> Attachment {
    let len = bands.len();
    let mut uf = UnionFind::new(len);
    for block in base.blocks() {
        for w in block.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut counts = vec![base.len() + extra];
    let mut fusions = Vec::with_capacity(order.len());
    let mut attached = Vec::with_capacity(order.len());
    for &k in order {
        let band = bands.pairs[k];
        let fused = uf.union(band.minus, band.plus);
        fusions.push(fused);
        attached.push(band);
        counts.push(uf.sets() + extra);
    }
    let labels: Vec<usize> = (0..len).map(|v| uf.find(v)).collect();
    Attachment {
        counts,
        fusions,
        bands: attached,
        final_blocks: Partition::from_labels(&labels),
    }
}

/// Ascending minus index.
pub fn canonical_order(bands: &BandMatching) -> Vec<usize> {
    (0..bands.pairs.len()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Failed { reason: FailReason },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        *self == Verdict::Certified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailReason {
    /// The first band set does not leave `n+1` components.
    BaseCount {
        direction: Direction,
        expected: usize,
        found: usize,
    },
    /// A band attached to a single component.
    NonFusion {
        direction: Direction,
        stage: usize,
        band: Pair,
    },
    /// A stage count other than `n+1-k`.
    StageCount {
        direction: Direction,
        stage: usize,
        expected: usize,
        found: usize,
    },
    NotPath {
        verdict: PathVerdict,
    },
    /// Some band order gave different counts from the canonical order.
    OrderDependent {
        direction: Direction,
        order: Vec<usize>,
    },
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::BaseCount {
                direction,
                expected,
                found,
            } => {
                write!(
                    f,
                    "K*{direction} has {found} components, expected {expected}"
                )
            }
            FailReason::NonFusion {
                direction,
                stage,
                band,
            } => write!(
                f,
                "band {band} attached at stage {stage} onto K*{direction} is not a fusion"
            ),
            FailReason::StageCount {
                direction,
                stage,
                expected,
                found,
            } => write!(
                f,
                "stage {stage} after K*{direction} has {found} components, expected {expected}"
            ),
            FailReason::NotPath { verdict } => {
                write!(f, "auxiliary graph is not a path: {verdict:?}")
            }
            FailReason::OrderDependent { direction, order } => {
                write!(
                    f,
                    "band order {order:?} onto K*{direction} changes stage counts"
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Extra random band orders tried per direction.
    pub random_orders: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            random_orders: 4,
            seed: 0x5eed,
        }
    }
}

/// Everything checked for one sequence. Field order is the JSON order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceCertificate {
    pub sequence: SignSeq,
    pub n: usize,
    pub matching_a: BandMatching,
    pub matching_b: BandMatching,
    pub graph_is_path: bool,
    pub path: Option<Vec<usize>>,
    /// Components of K*A, as vertex blocks.
    pub blocks_after_a: Partition,
    pub blocks_after_b: Partition,
    /// Component counts of K*A*B_1*...*B_k for k = 0..=n.
    pub stage_components_ab: Vec<usize>,
    /// Component counts of K*B*A_1*...*A_k for k = 0..=n.
    pub stage_components_ba: Vec<usize>,
    pub fusion_flags_ab: Vec<bool>,
    pub fusion_flags_ba: Vec<bool>,
    pub random_orders_checked: usize,
    pub verdict: Verdict,
}

impl SliceCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

pub fn certify(seq: &SignSeq) -> Result<SliceCertificate> {
    certify_with(seq, CertifyOptions::default())
}

pub fn certify_with(seq: &SignSeq, opts: CertifyOptions) -> Result<SliceCertificate> {
    seq.validate(Mode::OddKnot)?;
    let n = seq.n();
    let matching_a = pair_iterative(seq, Direction::Ccw)?;
    let matching_b = pair_iterative(seq, Direction::Cw)?;
    let blocks_after_a = components_after(&matching_a);
    let blocks_after_b = components_after(&matching_b);

    let ab = attach_bands(
        &blocks_after_a,
        0,
        &matching_b,
        &canonical_order(&matching_b),
    );
    let ba = attach_bands(
        &blocks_after_b,
        0,
        &matching_a,
        &canonical_order(&matching_a),
    );

    let graph = AuxGraph::from_parts(
        seq.clone(),
        matching_a.pairs.clone(),
        matching_b.pairs.clone(),
    );
    let path_verdict = graph.is_path();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ seq_hash(seq));
    let mut order_failure = None;
    'outer: for _ in 0..opts.random_orders {
        for (direction, base, bands, reference) in [
            (Direction::Ccw, &blocks_after_a, &matching_b, &ab),
            (Direction::Cw, &blocks_after_b, &matching_a, &ba),
        ] {
            let mut order = canonical_order(bands);
            order.shuffle(&mut rng);
            let trial = attach_bands(base, 0, bands, &order);
            if trial.counts != reference.counts || trial.all_fusions() != reference.all_fusions() {
                order_failure = Some(FailReason::OrderDependent { direction, order });
                break 'outer;
            }
        }
    }

    let verdict = match first_failure(n, &blocks_after_a, &blocks_after_b, &ab, &ba, &path_verdict)
        .or(order_failure)
    {
        None => Verdict::Certified,
        Some(reason) => Verdict::Failed { reason },
    };

    Ok(SliceCertificate {
        sequence: seq.clone(),
        n,
        graph_is_path: path_verdict.is_path(),
        path: match path_verdict {
            PathVerdict::Path(p) => Some(p),
            _ => None,
        },
        matching_a,
        matching_b,
        blocks_after_a,
        blocks_after_b,
        stage_components_ab: ab.counts,
        stage_components_ba: ba.counts,
        fusion_flags_ab: ab.fusions,
        fusion_flags_ba: ba.fusions,
        random_orders_checked: opts.random_orders,
        verdict,
    })
}

fn first_failure(
    n: usize,
    after_a: &Partition,
    after_b: &Partition,
    ab: &Attachment,
    ba: &Attachment,
    path: &PathVerdict,
) -> Option<FailReason> {
    // Directions are named by the band set attached first.
    for (direction, base) in [(Direction::Ccw, after_a), (Direction::Cw, after_b)] {
        if base.len() != n + 1 {
            return Some(FailReason::BaseCount {
                direction,
                expected: n + 1,
                found: base.len(),
            });
        }
    }
    for (direction, att) in [(Direction::Ccw, ab), (Direction::Cw, ba)] {
        if let Some((k, band)) = att.first_non_fusion() {
            return Some(FailReason::NonFusion {
                direction,
                stage: k + 1,
                band,
            });
        }
        for (k, &found) in att.counts.iter().enumerate() {
            let expected = n + 1 - k;
            if found != expected {
                return Some(FailReason::StageCount {
                    direction,
                    stage: k,
                    expected,
                    found,
                });
            }
        }
    }
    if !path.is_path() {
        return Some(FailReason::NotPath {
            verdict: path.clone(),
        });
    }
    None
}

fn seq_hash(seq: &SignSeq) -> u64 {
    seq.signs().iter().fold(0xcbf2_9ce4_8422_2325u64, |h, s| {
        (h ^ (s.is_plus() as u64 + 1)).wrapping_mul(0x100_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SignSeq {
        s.parse().unwrap()
    }

    #[test]
    fn components_after_outer_bands() {
        let a = pair_iterative(&seq("+-+-+"), Direction::Ccw).unwrap();
        let p = components_after(&a);
        assert_eq!(p.blocks(), [vec![1, 2], vec![3, 4], vec![0]]);

        let a = pair_iterative(&seq("+++--"), Direction::Ccw).unwrap();
        assert_eq!(
            components_after(&a).blocks(),
            [vec![1, 3], vec![0, 4], vec![2]]
        );

        let a = pair_iterative(&seq("+"), Direction::Ccw).unwrap();
        assert_eq!(components_after(&a).blocks(), [vec![0]]);
    }

    #[test]
    fn sequential_attachment() {
        let s = seq("+-+-+");
        let a = pair_iterative(&s, Direction::Ccw).unwrap();
        let b = pair_iterative(&s, Direction::Cw).unwrap();
        let att = attach_bands(&components_after(&a), 0, &b, &[0, 1]);
        assert_eq!(att.counts, [3, 2, 1]);
        assert_eq!(att.fusions, [true, true]);

        let s = seq("+++--");
        let a = pair_iterative(&s, Direction::Ccw).unwrap();
        let b = pair_iterative(&s, Direction::Cw).unwrap();
        assert_eq!(b.pairs, [Pair::new(3, 2), Pair::new(4, 1)]);
        let att = attach_bands(&components_after(&a), 0, &b, &[0, 1]);
        assert_eq!(att.counts, [3, 2, 1]);
        assert!(att.all_fusions());
    }

    #[test]
    fn non_fusion_is_named() {
        // Attaching the outer bands again onto K*A puts both feet on one
        // component each time.
        let s = seq("+-+-+");
        let a = pair_iterative(&s, Direction::Ccw).unwrap();
        let att = attach_bands(&components_after(&a), 0, &a, &[1, 0]);
        assert_eq!(att.first_non_fusion(), Some((0, Pair::new(3, 4))));
        assert_eq!(att.counts, [3, 3, 3]);
    }

    #[test]
    fn certify_small_cases() {
        let c = certify(&seq("+-+-+")).unwrap();
        assert!(c.verdict.is_certified());
        assert_eq!(c.stage_components_ab, [3, 2, 1]);
        assert_eq!(c.stage_components_ba, [3, 2, 1]);
        assert_eq!(c.path.as_deref(), Some(&[0, 1, 2, 3, 4][..]));

        let c = certify(&seq("+")).unwrap();
        assert!(c.verdict.is_certified());
        assert_eq!(c.stage_components_ab, [1]);
        assert!(c.fusion_flags_ab.is_empty());
    }

    #[test]
    fn certify_rejects_bad_input() {
        assert!(certify(&seq("+-")).is_err());
        assert!(certify(&seq("+--")).is_err());
    }
}
