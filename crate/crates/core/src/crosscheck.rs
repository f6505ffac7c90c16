//! Literal surgery on [`SpliceDiagram`] compared against the bookkeeping in
//! [`crate::certify`] and [`crate::links`].

use serde::Serialize;

use crate::certify::{attach_bands, canonical_order, components_after};
use crate::diagram::{corner_id, Corner, SpliceDiagram};
use crate::error::Result;
use crate::links::{kept_order, link_components_after, Correspondence};
use crate::pairing::{feet_placement, pair_iterative, BandFeet, BandMatching, Direction};
use crate::partition::Partition;
use crate::sequence::{Mode, Sign, SignSeq};

/// Corner of box `v` next to where a band of `direction` touches it.
pub fn foot_corner(direction: Direction, sign: Sign, v: usize) -> usize {
    let corner = match (direction, sign) {
        (Direction::Ccw, Sign::Minus) => Corner::NW,
        (Direction::Ccw, Sign::Plus) => Corner::NE,
        (Direction::Cw, Sign::Minus) => Corner::SE,
        (Direction::Cw, Sign::Plus) => Corner::SW,
    };
    corner_id(v, corner)
}

/// Diagram components seen by the bands of `direction`, as a vertex
/// partition.
pub fn vertex_partition(d: &SpliceDiagram, seq: &SignSeq, direction: Direction) -> Partition {
    let ids = d.component_ids();
    let labels: Vec<usize> = (0..seq.len())
        .map(|v| ids[foot_corner(direction, seq.sign(v), v)])
        .collect();
    Partition::from_labels(&labels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionCheck {
    /// Which band set goes first.
    pub first: Direction,
    /// Diagram counts while the first set is attached, from the bare
    /// diagram on.
    pub first_counts: Vec<usize>,
    /// Diagram counts while the second set is attached.
    pub diagram_counts: Vec<usize>,
    pub predicted_counts: Vec<usize>,
    /// Per stage of the second set: diagram blocks equal predicted blocks.
    pub blocks_agree: Vec<bool>,
    /// Largest change in component count over any single band.
    pub max_step: usize,
}

impl DirectionCheck {
    pub fn agrees(&self) -> bool {
        self.diagram_counts == self.predicted_counts && self.blocks_agree.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub sequence: SignSeq,
    pub base_components: usize,
    pub ab: DirectionCheck,
    pub ba: DirectionCheck,
}

impl DiagramCheck {
    pub fn agrees(&self) -> bool {
        let n = self.sequence.n();
        let rising: Vec<usize> = (1..=n + 1).collect();
        self.base_components == 1
            && self.ab.first_counts == rising
            && self.ba.first_counts == rising
            && self.ab.agrees()
            && self.ba.agrees()
            && self.ab.max_step <= 1
            && self.ba.max_step <= 1
    }
}

fn run_bands(
    mut d: SpliceDiagram,
    feet: &[&BandFeet],
    counts: &mut Vec<usize>,
) -> Result<SpliceDiagram> {
    for f in feet {
        d = d.apply_band(f)?;
        counts.push(d.count_components());
    }
    Ok(d)
}

fn max_step(counts: &[usize]) -> usize {
    counts
        .windows(2)
        .map(|w| w[0].abs_diff(w[1]))
        .max()
        .unwrap_or(0)
}

fn check_direction(
    seq: &SignSeq,
    first: &BandMatching,
    second: &BandMatching,
) -> Result<DirectionCheck> {
    let base = SpliceDiagram::build(seq);
    let first_feet = feet_placement(first);
    let second_feet = feet_placement(second);

    let mut first_counts = vec![base.count_components()];
    let mut d = run_bands(
        base,
        &first_feet.iter().collect::<Vec<_>>(),
        &mut first_counts,
    )?;

    let blocks = components_after(first);
    let order = canonical_order(second);
    let mut diagram_counts = vec![d.count_components()];
    let mut blocks_agree = vec![vertex_partition(&d, seq, second.direction).same_blocks(&blocks)];
    for (k, &i) in order.iter().enumerate() {
        d = d.apply_band(&second_feet[i])?;
        diagram_counts.push(d.count_components());
        let predicted = attach_bands(&blocks, 0, second, &order[..=k]).final_blocks;
        blocks_agree.push(vertex_partition(&d, seq, second.direction).same_blocks(&predicted));
    }
    let predicted_counts = attach_bands(&blocks, 0, second, &order).counts;
    Ok(DirectionCheck {
        first: first.direction,
        max_step: max_step(&first_counts).max(max_step(&diagram_counts)),
        first_counts,
        diagram_counts,
        predicted_counts,
        blocks_agree,
    })
}

/// Compare the certifier against literal surgery for an odd sequence.
pub fn check_knot(seq: &SignSeq) -> Result<DiagramCheck> {
    seq.validate(Mode::OddKnot)?;
    let a = pair_iterative(seq, Direction::Ccw)?;
    let b = pair_iterative(seq, Direction::Cw)?;
    Ok(DiagramCheck {
        sequence: seq.clone(),
        base_components: SpliceDiagram::build(seq).count_components(),
        ab: check_direction(seq, &a, &b)?,
        ba: check_direction(seq, &b, &a)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDirectionCheck {
    pub first: Direction,
    pub first_counts: Vec<usize>,
    /// Diagram partition after the kept first-set bands matches the
    /// corrected correspondence.
    pub corrected_blocks_agree: bool,
    /// Same comparison for the naive correspondence.
    pub naive_blocks_agree: bool,
    pub diagram_counts: Vec<usize>,
    /// Bookkeeping counts: a fusion lowers the count by one and the first
    /// non-fusion raises it by one; comparison stops there.
    pub predicted_counts: Vec<usize>,
    pub max_step: usize,
}

impl LinkDirectionCheck {
    pub fn agrees(&self) -> bool {
        let k = self.predicted_counts.len();
        self.corrected_blocks_agree && self.diagram_counts[..k] == self.predicted_counts[..]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDiagramCheck {
    pub sequence: SignSeq,
    pub drop_a: usize,
    pub drop_b: usize,
    pub base_components: usize,
    pub ab: LinkDirectionCheck,
    pub ba: LinkDirectionCheck,
}

impl LinkDiagramCheck {
    pub fn agrees(&self) -> bool {
        let n = self.sequence.n();
        let rising: Vec<usize> = (2..=n + 1).collect();
        self.base_components == 2
            && self.ab.first_counts == rising
            && self.ba.first_counts == rising
            && self.ab.agrees()
            && self.ba.agrees()
            && self.ab.max_step <= 1
            && self.ba.max_step <= 1
    }
}

fn check_link_direction(
    seq: &SignSeq,
    first: &BandMatching,
    drop_first: usize,
    second: &BandMatching,
    drop_second: usize,
) -> Result<LinkDirectionCheck> {
    let first_feet = feet_placement(first);
    let second_feet = feet_placement(second);
    let kept_first: Vec<&BandFeet> = kept_order(first, drop_first)
        .into_iter()
        .map(|k| &first_feet[k])
        .collect();

    let base = SpliceDiagram::build(seq);
    let mut first_counts = vec![base.count_components()];
    let mut d = run_bands(base, &kept_first, &mut first_counts)?;

    let corrected = link_components_after(first, drop_first, Correspondence::Corrected);
    let naive = link_components_after(first, drop_first, Correspondence::Naive);
    let seen = vertex_partition(&d, seq, second.direction);

    let order = kept_order(second, drop_second);
    let att = attach_bands(&corrected.blocks, corrected.untouched, second, &order);
    let mut predicted_counts = vec![att.counts[0]];
    for (k, &fused) in att.fusions.iter().enumerate() {
        if fused {
            predicted_counts.push(att.counts[k + 1]);
        } else {
            predicted_counts.push(att.counts[k] + 1);
            break;
        }
    }

    let mut diagram_counts = vec![d.count_components()];
    for &i in &order {
        d = d.apply_band(&second_feet[i])?;
        diagram_counts.push(d.count_components());
    }
    Ok(LinkDirectionCheck {
        first: first.direction,
        max_step: max_step(&first_counts).max(max_step(&diagram_counts)),
        first_counts,
        corrected_blocks_agree: seen.same_blocks(&corrected.blocks)
            && diagram_counts[0] == corrected.count(),
        naive_blocks_agree: seen.same_blocks(&naive.blocks),
        diagram_counts,
        predicted_counts,
    })
}

/// Compare the link bookkeeping against literal surgery for one choice of
/// dropped bands.
pub fn check_link(seq: &SignSeq, drop_a: usize, drop_b: usize) -> Result<LinkDiagramCheck> {
    seq.validate(Mode::EvenLink)?;
    let a = pair_iterative(seq, Direction::Ccw)?;
    let b = pair_iterative(seq, Direction::Cw)?;
    Ok(LinkDiagramCheck {
        sequence: seq.clone(),
        drop_a,
        drop_b,
        base_components: SpliceDiagram::build(seq).count_components(),
        ab: check_link_direction(seq, &a, drop_a, &b, drop_b)?,
        ba: check_link_direction(seq, &b, drop_b, &a, drop_a)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SignSeq {
        s.parse().unwrap()
    }

    #[test]
    fn model_knots_agree() {
        for s in ["+", "++-", "+-+-+", "+++--", "++--+", "-+-++-+"] {
            let c = check_knot(&seq(s)).unwrap();
            assert!(c.agrees(), "{s}: {c:#?}");
        }
    }

    #[test]
    fn model_knot_counts() {
        let c = check_knot(&seq("+-+-+")).unwrap();
        assert_eq!(c.ab.first_counts, [1, 2, 3]);
        assert_eq!(c.ab.diagram_counts, [3, 2, 1]);
    }

    #[test]
    fn link_residual_is_shared() {
        for s in ["+-", "+-+-", "++--", "+--+-+"] {
            let s = seq(s);
            let n = s.n();
            for i in 0..n {
                for j in 0..n {
                    let c = check_link(&s, i, j).unwrap();
                    assert!(c.agrees(), "{s} {i} {j}: {c:#?}");
                }
            }
        }
    }

    #[test]
    fn naive_rule_disagrees_with_diagram() {
        let c = check_link(&seq("+-+-"), 0, 0).unwrap();
        assert!(c.ab.corrected_blocks_agree);
        assert!(!c.ab.naive_blocks_agree);
    }
}
