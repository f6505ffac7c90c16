//! Even-length pretzel links `P(±a, ..., ±a)` with `n` boxes of each sign.
//!
//! Both pairings now match every box, so one band is dropped from each set
//! and `n-1` bands are attached per side. The two boxes of the dropped
//! band survive as the two-box pretzel `P(a,-a)`, a two component unlink.
//! Bands of the other set that touch either of those two boxes land on the
//! same component, and one further component is never touched.
//!
//! Which component that is depends on nesting. If the dropped band sits
//! inside the gap of a band that itself sits inside another band's gap, its
//! boxes join the component of that outer ("grandparent") band and a second
//! untouched component appears; otherwise they form a component of their
//! own. Literal surgery on the splice diagram confirms this.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{attach_bands, Attachment};
use crate::error::{Error, Result};
use crate::pairing::{pair_iterative, BandMatching, Direction, Pair};
use crate::partition::Partition;
use crate::sequence::{enumerate_balanced, Mode, SignSeq};

/// How the two leftover boxes map to the components of `P(a,-a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Correspondence {
    /// Both leftover boxes share one component, merged with the grandparent
    /// band's component when there is one; the rest is untouched.
    Corrected,
    /// Each leftover box gets its own component, as in the knot case.
    Naive,
}

/// Components after all but one band of a set: vertex blocks plus
/// components no vertex maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkPartition {
    pub blocks: Partition,
    pub untouched: usize,
}

impl LinkPartition {
    pub fn count(&self) -> usize {
        self.blocks.len() + self.untouched
    }
}

/// Components of `L * (matching minus band drop)`.
pub fn link_components_after(
    matching: &BandMatching,
    drop: usize,
    rule: Correspondence,
) -> LinkPartition {
    let dropped = matching.pairs[drop];
    let mut blocks: Vec<Vec<usize>> = matching
        .pairs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != drop)
        .map(|(_, p)| vec![p.minus, p.plus])
        .collect();
    let untouched = match rule {
        Correspondence::Corrected => {
            let grandparent = matching.enclosing(drop).and_then(|p| matching.enclosing(p));
            match grandparent {
                Some(g) => {
                    let g = if g < drop { g } else { g - 1 };
                    blocks[g].extend([dropped.minus, dropped.plus]);
                    2
                }
                None => {
                    blocks.push(vec![dropped.minus, dropped.plus]);
                    1
                }
            }
        }
        Correspondence::Naive => {
            blocks.push(vec![dropped.minus]);
            blocks.push(vec![dropped.plus]);
            0
        }
    };
    LinkPartition {
        blocks: Partition::from_blocks(matching.len(), blocks),
        untouched,
    }
}

/// One choice of dropped bands and its bookkeeping in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkTrial {
    pub drop_a: usize,
    pub drop_b: usize,
    pub dropped_a: Pair,
    pub dropped_b: Pair,
    pub stage_components_ab: Vec<usize>,
    pub fusion_flags_ab: Vec<bool>,
    pub stage_components_ba: Vec<usize>,
    pub fusion_flags_ba: Vec<bool>,
    pub passes: bool,
}

/// Bands of `bands` other than `drop`, in canonical order.
pub fn kept_order(bands: &BandMatching, drop: usize) -> Vec<usize> {
    (0..bands.pairs.len()).filter(|&k| k != drop).collect()
}

fn direction_passes(att: &Attachment) -> bool {
    att.all_fusions() && att.counts.last() == Some(&2)
}

pub fn run_trial(
    a: &BandMatching,
    b: &BandMatching,
    drop_a: usize,
    drop_b: usize,
    rule: Correspondence,
) -> LinkTrial {
    let after_a = link_components_after(a, drop_a, rule);
    let after_b = link_components_after(b, drop_b, rule);
    let ab = attach_bands(
        &after_a.blocks,
        after_a.untouched,
        b,
        &kept_order(b, drop_b),
    );
    let ba = attach_bands(
        &after_b.blocks,
        after_b.untouched,
        a,
        &kept_order(a, drop_a),
    );
    LinkTrial {
        drop_a,
        drop_b,
        dropped_a: a.pairs[drop_a],
        dropped_b: b.pairs[drop_b],
        passes: direction_passes(&ab) && direction_passes(&ba),
        stage_components_ab: ab.counts,
        fusion_flags_ab: ab.fusions,
        stage_components_ba: ba.counts,
        fusion_flags_ba: ba.fusions,
    }
}

/// Every drop choice for one even sequence.
pub fn trials(seq: &SignSeq, rule: Correspondence) -> Result<Vec<LinkTrial>> {
    seq.validate(Mode::EvenLink)?;
    let a = pair_iterative(seq, Direction::Ccw)?;
    let b = pair_iterative(seq, Direction::Cw)?;
    let n = seq.n();
    Ok((0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| run_trial(&a, &b, i, j, rule))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub sequence: SignSeq,
    pub class: SignSeq,
    pub alternating: bool,
    pub choices: usize,
    /// Passing `(drop_a, drop_b)` under the corrected correspondence.
    pub passing: Vec<(usize, usize)>,
    /// Passing choices if the leftover boxes are (wrongly) given separate
    /// components.
    pub passing_naive: Vec<(usize, usize)>,
    /// Some choice passes naively but every choice fails once the shared
    /// residual component is accounted for.
    pub blocked_by_residual: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub representative: SignSeq,
    pub members: usize,
    pub alternating: bool,
    pub passing_members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub n: usize,
    pub sequences: Vec<SequenceReport>,
    pub classes: Vec<ClassSummary>,
    /// True when exactly the alternating class has passing choices.
    pub conforms: bool,
    pub nonconforming: Vec<SignSeq>,
    pub weak_double_slicing: &'static str,
}

pub fn report_sequence(seq: &SignSeq) -> Result<SequenceReport> {
    let passing_under = |rule| -> Result<Vec<(usize, usize)>> {
        Ok(trials(seq, rule)?
            .into_iter()
            .filter(|t| t.passes)
            .map(|t| (t.drop_a, t.drop_b))
            .collect())
    };
    let passing = passing_under(Correspondence::Corrected)?;
    let passing_naive = passing_under(Correspondence::Naive)?;
    Ok(SequenceReport {
        sequence: seq.clone(),
        class: seq.canonical_form().0,
        alternating: seq.is_alternating(),
        choices: seq.n() * seq.n(),
        blocked_by_residual: passing.is_empty() && !passing_naive.is_empty(),
        passing,
        passing_naive,
    })
}

/// Exhaustive sweep over all even sequences with `n` boxes of each sign.
pub fn explore_link_case(n: usize) -> Result<LinkReport> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let seqs: Vec<SignSeq> = enumerate_balanced(n, Mode::EvenLink).collect();
    let sequences = seqs
        .par_iter()
        .map(report_sequence)
        .collect::<Result<Vec<_>>>()?;

    let mut classes: Vec<ClassSummary> = Vec::new();
    for r in &sequences {
        match classes.iter_mut().find(|c| c.representative == r.class) {
            Some(c) => {
                c.members += 1;
                c.passing_members += !r.passing.is_empty() as usize;
            }
            None => classes.push(ClassSummary {
                representative: r.class.clone(),
                members: 1,
                alternating: r.alternating,
                passing_members: !r.passing.is_empty() as usize,
            }),
        }
    }
    classes.sort_by(|x, y| x.representative.cmp(&y.representative));

    let nonconforming: Vec<SignSeq> = sequences
        .iter()
        .filter(|r| r.passing.is_empty() == r.alternating)
        .map(|r| r.sequence.clone())
        .collect();
    Ok(LinkReport {
        n,
        conforms: nonconforming.is_empty(),
        nonconforming,
        sequences,
        classes,
        weak_double_slicing: "not assessed: no combinatorial criterion",
    })
}

impl LinkReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,sequence,class,alternating,choices,passing,passing_naive\n");
        let fmt = |v: &[(usize, usize)]| {
            v.iter()
                .map(|(a, b)| format!("{a}:{b}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for r in &self.sequences {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.n,
                r.sequence,
                r.class,
                r.alternating,
                r.choices,
                fmt(&r.passing),
                fmt(&r.passing_naive)
            )
            .unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "even links with n = {} ({} sequences, {} classes)",
            self.n,
            self.sequences.len(),
            self.classes.len()
        )
        .unwrap();
        for c in &self.classes {
            writeln!(
                out,
                "  class {:<12} members {:>3}  alternating {:<5}  with passing choices {:>3}",
                c.representative.to_string(),
                c.members,
                c.alternating,
                c.passing_members
            )
            .unwrap();
        }
        if self.conforms {
            writeln!(
                out,
                "only the alternating class passes (supports the conjecture)"
            )
            .unwrap();
        } else {
            let list: Vec<String> = self.nonconforming.iter().map(|s| s.to_string()).collect();
            writeln!(out, "NONCONFORMING: {}", list.join(", ")).unwrap();
        }
        writeln!(out, "weak double slicing: {}", self.weak_double_slicing).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SignSeq {
        s.parse().unwrap()
    }

    #[test]
    fn residual_two_box_link() {
        let a = pair_iterative(&seq("+-"), Direction::Ccw).unwrap();
        let p = link_components_after(&a, 0, Correspondence::Corrected);
        assert_eq!(p.count(), 2);
        assert_eq!(p.blocks.blocks(), [vec![0, 1]]);
    }

    #[test]
    fn deep_drop_joins_grandparent() {
        // Ccw gaps nest (3,2) > (4,1) > (5,0); dropping the innermost band
        // merges its boxes into the outermost band's component.
        let a = pair_iterative(&seq("+++---"), Direction::Ccw).unwrap();
        assert_eq!(a.enclosing(2), Some(1));
        assert_eq!(a.enclosing(1), Some(0));
        assert_eq!(a.enclosing(0), None);
        let p = link_components_after(&a, 2, Correspondence::Corrected);
        assert_eq!(p.blocks.blocks(), [vec![0, 2, 3, 5], vec![1, 4]]);
        assert_eq!(p.untouched, 2);
        assert_eq!(p.count(), 4);

        let shallow = link_components_after(&a, 1, Correspondence::Corrected);
        assert_eq!(shallow.untouched, 1);
        assert_eq!(shallow.count(), 4);
    }

    #[test]
    fn shared_leftover_block() {
        let a = pair_iterative(&seq("+-+-"), Direction::Ccw).unwrap();
        assert_eq!(a.pairs, [Pair::new(1, 2), Pair::new(3, 0)]);
        let p = link_components_after(&a, 1, Correspondence::Corrected);
        assert_eq!(p.blocks.blocks(), [vec![1, 2], vec![0, 3]]);
        assert_eq!(p.untouched, 1);
        assert_eq!(p.count(), 3);

        let naive = link_components_after(&a, 1, Correspondence::Naive);
        assert_eq!(naive.count(), 3);
        assert_eq!(naive.blocks.len(), 3);
    }

    #[test]
    fn block_count_is_n_plus_one() {
        for s in enumerate_balanced(3, Mode::EvenLink) {
            let a = pair_iterative(&s, Direction::Ccw).unwrap();
            for drop in 0..3 {
                assert_eq!(
                    link_components_after(&a, drop, Correspondence::Corrected).count(),
                    4
                );
            }
        }
    }

    #[test]
    fn single_class_n1_passes() {
        let t = trials(&seq("+-"), Correspondence::Corrected).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].passes);
        assert_eq!(t[0].stage_components_ab, [2]);
    }

    #[test]
    fn double_edges_fail() {
        // ++-- pairs the same boxes both ways, so the graph is two 2-cycles.
        let r = report_sequence(&seq("++--")).unwrap();
        assert!(r.passing.is_empty());
        assert!(!r.passing_naive.is_empty());
        assert!(r.blocked_by_residual);
    }

    #[test]
    fn alternating_n2_passes() {
        let r = report_sequence(&seq("+-+-")).unwrap();
        assert_eq!(r.passing, [(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn rejects_odd_sequences() {
        assert!(trials(&seq("+-+"), Correspondence::Corrected).is_err());
        assert!(explore_link_case(0).is_err());
    }
}
