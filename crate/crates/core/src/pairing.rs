//! Band matchings: which minus box each band cancels against which plus box.
//!
//! Two independent constructions are provided. [`pair_iterative`] follows
//! the staged cancellation procedure literally; [`pair_balanced`] pairs each
//! minus with the first plus whose in-between gap is sign balanced. They are
//! expected to agree on every input with at least as many plus as minus boxes.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{Layer, Site, Slot};
use crate::error::{Error, Result};
use crate::sequence::{Sign, SignSeq};

/// Pairing direction. Counterclockwise pairing builds the outer band set,
/// clockwise the central one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "A")]
    Ccw,
    #[serde(rename = "B")]
    Cw,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Ccw => Direction::Cw,
            Direction::Cw => Direction::Ccw,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::Ccw => "A",
            Direction::Cw => "B",
        }
    }

    pub fn layer(self) -> Layer {
        match self {
            Direction::Ccw => Layer::Outer,
            Direction::Cw => Layer::Inner,
        }
    }

    fn step(self, seq: &SignSeq, i: usize) -> usize {
        match self {
            Direction::Ccw => seq.succ(i),
            Direction::Cw => seq.pred(i),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One band: the minus box it cancels and its plus partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Pair {
    pub minus: usize,
    pub plus: usize,
}

impl Pair {
    pub fn new(minus: usize, plus: usize) -> Pair {
        Pair { minus, plus }
    }
}

impl From<(usize, usize)> for Pair {
    fn from((minus, plus): (usize, usize)) -> Pair {
        Pair { minus, plus }
    }
}

impl From<Pair> for (usize, usize) {
    fn from(p: Pair) -> (usize, usize) {
        (p.minus, p.plus)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.minus, self.plus)
    }
}

/// A direction-tagged matching of minus boxes to plus boxes.
///
/// `pairs` is sorted by minus index, which is also the canonical band
/// order; `stages[i]` is the cancellation round (from 1) of `pairs[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandMatching {
    pub direction: Direction,
    #[serde(skip)]
    len: usize,
    pub pairs: Vec<Pair>,
    pub unmatched: Vec<usize>,
    pub stages: Vec<usize>,
}

impl BandMatching {
    fn from_parts(direction: Direction, len: usize, mut staged: Vec<(Pair, usize)>) -> Self {
        staged.sort();
        let mut matched = vec![false; len];
        for (p, _) in &staged {
            matched[p.minus] = true;
            matched[p.plus] = true;
        }
        BandMatching {
            direction,
            len,
            pairs: staged.iter().map(|&(p, _)| p).collect(),
            stages: staged.iter().map(|&(_, s)| s).collect(),
            unmatched: (0..len).filter(|&i| !matched[i]).collect(),
        }
    }

    /// Number of twist boxes of the underlying sequence.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Same pairs and leftovers, ignoring stage numbers.
    pub fn same_pairing(&self, other: &BandMatching) -> bool {
        self.direction == other.direction
            && self.pairs == other.pairs
            && self.unmatched == other.unmatched
    }

    /// Partner of vertex `v`, if matched.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|p| {
            if p.minus == v {
                Some(p.plus)
            } else if p.plus == v {
                Some(p.minus)
            } else {
                None
            }
        })
    }

    /// Vertices strictly between the two ends of `pair`, walking from the
    /// minus end in the pairing direction.
    pub fn gap(&self, pair: Pair) -> Vec<usize> {
        let m = self.len;
        let mut out = Vec::new();
        let mut i = pair.minus;
        loop {
            i = match self.direction {
                Direction::Ccw => (i + 1) % m,
                Direction::Cw => (i + m - 1) % m,
            };
            if i == pair.plus {
                return out;
            }
            out.push(i);
        }
    }

    /// Index of the innermost pair whose gap contains pair `k`, if any.
    pub fn enclosing(&self, k: usize) -> Option<usize> {
        let v = self.pairs[k].minus;
        (0..self.pairs.len())
            .filter(|&j| j != k)
            .map(|j| (j, self.gap(self.pairs[j])))
            .filter(|(_, g)| g.contains(&v))
            .min_by_key(|(_, g)| g.len())
            .map(|(j, _)| j)
    }

    /// True when no two pairs interleave around the cycle.
    pub fn is_noncrossing(&self) -> bool {
        let m = self.len;
        // position of x on the arc starting just after a
        let inside = |a: usize, b: usize, x: usize| {
            let d = |y: usize| (y + m - a) % m;
            d(x) > 0 && d(x) < d(b)
        };
        self.pairs.iter().enumerate().all(|(i, p)| {
            self.pairs[i + 1..]
                .iter()
                .all(|q| inside(p.minus, p.plus, q.minus) == inside(p.minus, p.plus, q.plus))
        })
    }
}

fn check_counts(seq: &SignSeq) -> Result<()> {
    let (plus, minus) = (seq.plus_count(), seq.minus_count());
    if plus < minus {
        return Err(Error::TooManyMinus { plus, minus });
    }
    Ok(())
}

/// Survivor list for the cancellation procedure, counterclockwise only.
struct Survivors {
    next: Vec<usize>,
    prev: Vec<usize>,
    alive: Vec<bool>,
}

impl Survivors {
    fn new(m: usize) -> Self {
        Survivors {
            next: (0..m).map(|i| (i + 1) % m).collect(),
            prev: (0..m).map(|i| (i + m - 1) % m).collect(),
            alive: vec![true; m],
        }
    }

    fn remove(&mut self, i: usize) {
        let (p, n) = (self.prev[i], self.next[i]);
        self.next[p] = n;
        self.prev[n] = p;
        self.alive[i] = false;
    }

    fn cancellable<'a>(&'a self, signs: &'a [Sign]) -> impl Iterator<Item = Pair> + 'a {
        (0..signs.len())
            .filter(move |&i| self.alive[i] && signs[i].is_minus())
            .map(move |i| Pair::new(i, self.next[i]))
            .filter(move |p| p.plus != p.minus && signs[p.plus].is_plus())
    }
}

/// Reverse the sequence so that clockwise becomes counterclockwise.
fn mirrored(seq: &SignSeq) -> SignSeq {
    seq.reflected(seq.len() - 1)
}

fn mirror_back(len: usize, staged: Vec<(Pair, usize)>) -> Vec<(Pair, usize)> {
    let back = |i: usize| len - 1 - i;
    staged
        .into_iter()
        .map(|(p, s)| (Pair::new(back(p.minus), back(p.plus)), s))
        .collect()
}

/// Staged cancellation: every round pairs each surviving minus with the
/// surviving plus adjacent to it in `direction`, then removes both.
pub fn pair_iterative(seq: &SignSeq, direction: Direction) -> Result<BandMatching> {
    check_counts(seq)?;
    let m = seq.len();
    let staged = match direction {
        Direction::Ccw => iterate_ccw(seq.signs()),
        Direction::Cw => mirror_back(m, iterate_ccw(mirrored(seq).signs())),
    };
    Ok(BandMatching::from_parts(direction, m, staged))
}

fn iterate_ccw(signs: &[Sign]) -> Vec<(Pair, usize)> {
    let mut live = Survivors::new(signs.len());
    let mut remaining = signs.iter().filter(|s| s.is_minus()).count();
    let mut out = Vec::with_capacity(remaining);
    let mut stage = 0;
    while remaining > 0 {
        stage += 1;
        let round: Vec<Pair> = live.cancellable(signs).collect();
        assert!(
            !round.is_empty(),
            "cancellation stalled with {remaining} minus boxes left"
        );
        for p in round {
            live.remove(p.minus);
            live.remove(p.plus);
            out.push((p, stage));
            remaining -= 1;
        }
    }
    out
}

/// Like [`pair_iterative`] but cancels one randomly chosen adjacent pair
/// at a time. Stage numbers then count single cancellations.
pub fn pair_iterative_randomized<R: Rng + ?Sized>(
    seq: &SignSeq,
    direction: Direction,
    rng: &mut R,
) -> Result<BandMatching> {
    check_counts(seq)?;
    let m = seq.len();
    let work = match direction {
        Direction::Ccw => seq.clone(),
        Direction::Cw => mirrored(seq),
    };
    let signs = work.signs();
    let mut live = Survivors::new(m);
    let mut staged = Vec::new();
    let mut remaining = work.minus_count();
    while remaining > 0 {
        let options: Vec<Pair> = live.cancellable(signs).collect();
        let &p = options.choose(rng).expect("cancellation stalled");
        live.remove(p.minus);
        live.remove(p.plus);
        staged.push((p, staged.len() + 1));
        remaining -= 1;
    }
    if direction == Direction::Cw {
        staged = mirror_back(m, staged);
    }
    Ok(BandMatching::from_parts(direction, m, staged))
}

/// Pair each minus with the first plus in `direction` whose strictly
/// in-between gap holds equally many plus and minus boxes.
///
/// Stages are recovered from nesting: a pair is cancelled one round after
/// the last pair inside its gap.
pub fn pair_balanced(seq: &SignSeq, direction: Direction) -> Result<BandMatching> {
    check_counts(seq)?;
    let m = seq.len();
    let mut pairs = Vec::with_capacity(seq.minus_count());
    for v in (0..m).filter(|&v| seq.sign(v).is_minus()) {
        let mut excess_minus = 0usize;
        let mut u = v;
        let partner = loop {
            u = direction.step(seq, u);
            assert!(u != v, "no balanced partner for {v}");
            match seq.sign(u) {
                Sign::Plus if excess_minus == 0 => break u,
                Sign::Plus => excess_minus -= 1,
                Sign::Minus => excess_minus += 1,
            }
        };
        pairs.push(Pair::new(v, partner));
    }

    let mut draft = BandMatching::from_parts(direction, m, pairs.iter().map(|&p| (p, 0)).collect());
    let mut order: Vec<usize> = (0..draft.pairs.len()).collect();
    let gaps: Vec<Vec<usize>> = draft.pairs.iter().map(|&p| draft.gap(p)).collect();
    order.sort_by_key(|&i| gaps[i].len());
    let mut stage_of = vec![0usize; m];
    for i in order {
        let inner = gaps[i].iter().map(|&v| stage_of[v]).max().unwrap_or(0);
        let p = draft.pairs[i];
        stage_of[p.minus] = inner + 1;
        stage_of[p.plus] = inner + 1;
        draft.stages[i] = inner + 1;
    }
    Ok(draft)
}

/// Attachment sites of a band's two feet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandFeet {
    pub band: Pair,
    pub sites: [Site; 2],
}

/// Where each band of `matching` touches the diagram.
///
/// Outer (counterclockwise) bands sit just clockwise of their minus box and
/// just counterclockwise of their plus box; central (clockwise) bands sit
/// just clockwise of their plus box and just counterclockwise of their
/// minus box. The first site is always the one next to the minus box.
pub fn feet_placement(matching: &BandMatching) -> Vec<BandFeet> {
    let m = matching.len();
    let before = |v: usize| Site::new(matching.direction.layer(), (v + m - 1) % m, Slot::End);
    let after = |v: usize| Site::new(matching.direction.layer(), v, Slot::Start);
    matching
        .pairs
        .iter()
        .map(|&band| {
            let sites = match matching.direction {
                Direction::Ccw => [before(band.minus), after(band.plus)],
                Direction::Cw => [after(band.minus), before(band.plus)],
            };
            BandFeet { band, sites }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn seq(s: &str) -> SignSeq {
        s.parse().unwrap()
    }

    fn pairs(v: &[(usize, usize)]) -> Vec<Pair> {
        let mut out: Vec<Pair> = v.iter().map(|&p| p.into()).collect();
        out.sort();
        out
    }

    #[test]
    fn iterative_model_knot() {
        let a = pair_iterative(&seq("+-+-+"), Direction::Ccw).unwrap();
        assert_eq!(a.pairs, pairs(&[(1, 2), (3, 4)]));
        assert_eq!(a.unmatched, [0]);
        assert_eq!(a.stages, [1, 1]);

        let b = pair_iterative(&seq("+-+-+"), Direction::Cw).unwrap();
        assert_eq!(b.pairs, pairs(&[(1, 0), (3, 2)]));
        assert_eq!(b.unmatched, [4]);
    }

    #[test]
    fn iterative_needs_two_rounds() {
        let a = pair_iterative(&seq("++--+"), Direction::Ccw).unwrap();
        assert_eq!(a.pairs, pairs(&[(3, 4), (2, 0)]));
        assert_eq!(a.unmatched, [1]);
        assert_eq!(a.stages, [2, 1]);

        let b = pair_iterative(&seq("+++--"), Direction::Cw).unwrap();
        assert_eq!(b.pairs, pairs(&[(3, 2), (4, 1)]));
        assert_eq!(b.unmatched, [0]);
        assert_eq!(b.stages, [1, 2]);
    }

    #[test]
    fn balanced_rule_examples() {
        let a = pair_balanced(&seq("++--+"), Direction::Ccw).unwrap();
        assert_eq!(a.partner(2), Some(0));
        assert_eq!(a.gap(Pair::new(2, 0)), [3, 4]);
        let m = pair_balanced(&seq("+"), Direction::Cw).unwrap();
        assert!(m.pairs.is_empty());
        assert_eq!(m.unmatched, [0]);
    }

    #[test]
    fn rules_agree_on_small_cases() {
        for s in ["+-+-+", "++--+", "+++--", "+", "-++", "+-+-", "--++"] {
            for d in [Direction::Ccw, Direction::Cw] {
                let it = pair_iterative(&seq(s), d).unwrap();
                let bal = pair_balanced(&seq(s), d).unwrap();
                assert_eq!(it, bal, "{s} {d}");
            }
        }
    }

    #[test]
    fn even_sequences_pair_everything() {
        let a = pair_iterative(&seq("++--"), Direction::Ccw).unwrap();
        assert_eq!(a.pairs, pairs(&[(3, 0), (2, 1)]));
        assert!(a.unmatched.is_empty());
    }

    #[test]
    fn too_many_minus_is_rejected() {
        assert!(matches!(
            pair_iterative(&seq("+--"), Direction::Ccw),
            Err(Error::TooManyMinus { plus: 1, minus: 2 })
        ));
        assert!(pair_balanced(&seq("--"), Direction::Cw).is_err());
    }

    #[test]
    fn randomized_order_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = seq("+-++--+-+");
        for d in [Direction::Ccw, Direction::Cw] {
            let fixed = pair_iterative(&s, d).unwrap();
            for _ in 0..50 {
                let r = pair_iterative_randomized(&s, d, &mut rng).unwrap();
                assert!(fixed.same_pairing(&r));
            }
        }
    }

    #[test]
    fn noncrossing_detection() {
        let ok = pair_iterative(&seq("++--+"), Direction::Ccw).unwrap();
        assert!(ok.is_noncrossing());
        let mut bad = ok.clone();
        bad.pairs = pairs(&[(0, 2), (1, 3)]);
        assert!(!bad.is_noncrossing());
    }

    #[test]
    fn feet_for_outer_and_central_bands() {
        let a = pair_iterative(&seq("+-+-+"), Direction::Ccw).unwrap();
        let feet = feet_placement(&a);
        assert_eq!(feet[0].band, Pair::new(1, 2));
        assert_eq!(
            feet[0].sites,
            [
                Site::new(Layer::Outer, 0, Slot::End),
                Site::new(Layer::Outer, 2, Slot::Start)
            ]
        );

        let b = pair_iterative(&seq("+-+-+"), Direction::Cw).unwrap();
        let feet = feet_placement(&b);
        assert_eq!(feet[0].band, Pair::new(1, 0));
        assert_eq!(
            feet[0].sites,
            [
                Site::new(Layer::Inner, 1, Slot::Start),
                Site::new(Layer::Inner, 4, Slot::End)
            ]
        );

        let empty = pair_iterative(&seq("+"), Direction::Ccw).unwrap();
        assert!(feet_placement(&empty).is_empty());
    }

    #[test]
    fn matching_json_shape() {
        let a = pair_iterative(&seq("++--+"), Direction::Ccw).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"direction":"A","pairs":[[2,0],[3,4]],"unmatched":[1],"stages":[2,1]}"#
        );
    }
}
