//! Arc-splice model of the standard pretzel diagram.
//!
//! Each twist box has four corners NW, NE, SW, SE. An odd number of half
//! twists always joins NW to SE and NE to SW, so the model only records
//! those two strands per box. Closure arcs join NE_i to NW_{i+1} on the
//! outer side and SE_i to SW_{i+1} on the central side.
//!
//! Band surgery is done literally. A foot cuts a closure arc at a named
//! site, and the band's two sides reconnect the four loose ends the way a
//! flat band lying in the outer or central region does. Component counts
//! are read off by tracing cycles of the two gluing layers.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::BandFeet;
use crate::sequence::SignSeq;

/// Which region a closure arc borders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Layer {
    /// Arcs NE_i -> NW_{i+1}, bordering the unbounded region.
    Outer,
    /// Arcs SE_i -> SW_{i+1}, bordering the central region.
    Inner,
}

/// Position of a foot along its closure arc: next to the box the arc
/// leaves (`Start`) or next to the box it enters (`End`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slot {
    Start,
    End,
}

/// A foot site: the closure arc `gap` (between boxes `gap` and `gap + 1`)
/// in `layer`, at ordinal `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    pub layer: Layer,
    pub gap: usize,
    pub slot: Slot,
}

impl Site {
    pub fn new(layer: Layer, gap: usize, slot: Slot) -> Site {
        Site { layer, gap, slot }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layer = match self.layer {
            Layer::Outer => "out",
            Layer::Inner => "in",
        };
        let slot = match self.slot {
            Slot::Start => "start",
            Slot::End => "end",
        };
        write!(f, "{layer}{}.{slot}", self.gap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

/// A loose end of a strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Corner {
        tbox: usize,
        corner: Corner,
    },
    /// The piece of a cut arc lying before (`after == false`) or after the
    /// cut, in arc direction.
    Foot {
        site: Site,
        after: bool,
    },
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Corner { tbox, corner } => write!(f, "{corner:?}{tbox}"),
            Endpoint::Foot { site, after } => {
                write!(f, "{site}{}", if *after { '+' } else { '-' })
            }
        }
    }
}

pub fn corner_id(tbox: usize, corner: Corner) -> usize {
    4 * tbox + corner as usize
}

/// The pretzel diagram plus all band surgeries applied so far.
///
/// `strand` pairs endpoints joined inside a box or across a band;
/// `arc` pairs endpoints joined by a (possibly cut) closure arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceDiagram {
    boxes: usize,
    endpoints: Vec<Endpoint>,
    strand: Vec<usize>,
    arc: Vec<usize>,
    /// Per layer and gap, the endpoint id of the `before` end at each cut
    /// slot; the `after` end is the next id.
    cuts: [Vec<[Option<usize>; 2]>; 2],
    surgeries: Vec<[Site; 2]>,
}

impl SpliceDiagram {
    /// The standard diagram with `m` odd twist boxes.
    pub fn standard(m: usize) -> SpliceDiagram {
        assert!(m > 0, "a pretzel needs at least one twist box");
        let corners = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];
        let endpoints = (0..m)
            .flat_map(|tbox| corners.map(|corner| Endpoint::Corner { tbox, corner }))
            .collect();
        let mut d = SpliceDiagram {
            boxes: m,
            endpoints,
            strand: vec![usize::MAX; 4 * m],
            arc: vec![usize::MAX; 4 * m],
            cuts: [vec![[None; 2]; m], vec![[None; 2]; m]],
            surgeries: Vec::new(),
        };
        for i in 0..m {
            let j = (i + 1) % m;
            d.join_strand(corner_id(i, Corner::NW), corner_id(i, Corner::SE));
            d.join_strand(corner_id(i, Corner::NE), corner_id(i, Corner::SW));
            d.join_arc(corner_id(i, Corner::NE), corner_id(j, Corner::NW));
            d.join_arc(corner_id(i, Corner::SE), corner_id(j, Corner::SW));
        }
        d
    }

    /// Only the length of `seq` matters: component structure depends on
    /// twist parity, and every box is odd.
    pub fn build(seq: &SignSeq) -> SpliceDiagram {
        SpliceDiagram::standard(seq.len())
    }

    pub fn boxes(&self) -> usize {
        self.boxes
    }

    pub fn surgeries(&self) -> &[[Site; 2]] {
        &self.surgeries
    }

    pub fn endpoint(&self, id: usize) -> Endpoint {
        self.endpoints[id]
    }

    fn join_strand(&mut self, a: usize, b: usize) {
        self.strand[a] = b;
        self.strand[b] = a;
    }

    fn join_arc(&mut self, a: usize, b: usize) {
        self.arc[a] = b;
        self.arc[b] = a;
    }

    fn arc_ends(&self, layer: Layer, gap: usize) -> (usize, usize) {
        let next = (gap + 1) % self.boxes;
        match layer {
            Layer::Outer => (corner_id(gap, Corner::NE), corner_id(next, Corner::NW)),
            Layer::Inner => (corner_id(gap, Corner::SE), corner_id(next, Corner::SW)),
        }
    }

    fn layer_cuts(&self, layer: Layer) -> &Vec<[Option<usize>; 2]> {
        &self.cuts[layer as usize]
    }

    pub fn is_cut(&self, site: Site) -> bool {
        site.gap < self.boxes && self.layer_cuts(site.layer)[site.gap][site.slot as usize].is_some()
    }

    fn check_site(&self, site: Site) -> Result<()> {
        if site.gap >= self.boxes {
            return Err(Error::NoSuchSite(site, self.boxes));
        }
        if self.is_cut(site) {
            return Err(Error::StaleSite(site));
        }
        Ok(())
    }

    /// Cut the arc at `site`, returning the ids of its (before, after) ends.
    fn cut(&mut self, site: Site) -> (usize, usize) {
        let (start, end) = self.arc_ends(site.layer, site.gap);
        let slots = self.layer_cuts(site.layer)[site.gap];
        let left = match site.slot {
            Slot::Start => start,
            Slot::End => slots[0].map_or(start, |id| id + 1),
        };
        let right = match site.slot {
            Slot::Start => slots[1].unwrap_or(end),
            Slot::End => end,
        };
        debug_assert_eq!(self.arc[left], right);

        let before = self.endpoints.len();
        self.endpoints.push(Endpoint::Foot { site, after: false });
        self.endpoints.push(Endpoint::Foot { site, after: true });
        self.strand.extend([usize::MAX; 2]);
        self.arc.extend([usize::MAX; 2]);
        self.join_arc(left, before);
        self.join_arc(before + 1, right);
        self.cuts[site.layer as usize][site.gap][site.slot as usize] = Some(before);
        (before, before + 1)
    }

    /// Cyclic position of a site along the boundary of its region.
    fn position(&self, site: Site) -> usize {
        2 * site.gap + site.slot as usize
    }

    /// Perform one band move, returning the new diagram.
    ///
    /// With the feet at boundary positions x and y, the side of the band
    /// facing the boundary stretch from x forward to y joins the after-end
    /// at x to the before-end at y; the other side joins the after-end at
    /// y to the before-end at x. This is the only reconnection a flat band
    /// in a disc region allows.
    pub fn apply_band(&self, feet: &BandFeet) -> Result<SpliceDiagram> {
        let [x, y] = feet.sites;
        if x == y {
            return Err(Error::SameSite(x));
        }
        self.check_site(x)?;
        self.check_site(y)?;
        // The rule is symmetric in x and y; order them for the log only.
        let (x, y) = if self.position(x) <= self.position(y) {
            (x, y)
        } else {
            (y, x)
        };
        let mut d = self.clone();
        let (x_before, x_after) = d.cut(x);
        let (y_before, y_after) = d.cut(y);
        d.join_strand(x_after, y_before);
        d.join_strand(y_after, x_before);
        d.surgeries.push([x, y]);
        Ok(d)
    }

    /// Apply bands in order, failing on the first bad site.
    pub fn apply_all<'a>(
        &self,
        feet: impl IntoIterator<Item = &'a BandFeet>,
    ) -> Result<SpliceDiagram> {
        let mut d = self.clone();
        for f in feet {
            d = d.apply_band(f)?;
        }
        Ok(d)
    }

    /// Component label of every endpoint, numbered in order of first
    /// appearance.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.endpoints.len()];
        let mut next = 0;
        for start in 0..self.endpoints.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut e = start;
            loop {
                label[e] = next;
                let f = self.strand[e];
                label[f] = next;
                e = self.arc[f];
                if e == start {
                    break;
                }
            }
            next += 1;
        }
        label
    }

    pub fn count_components(&self) -> usize {
        self.component_ids().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Text dump: one gluing per line in a stable order, then the surgery
    /// log.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "boxes {}", self.boxes).unwrap();
        writeln!(out, "components {}", self.count_components()).unwrap();
        let mut lines: Vec<(u8, Endpoint, Endpoint)> = Vec::new();
        for (a, &b) in self.strand.iter().enumerate() {
            if a < b {
                let kind = match self.endpoints[a] {
                    Endpoint::Corner { .. } => 0,
                    Endpoint::Foot { .. } => 2,
                };
                lines.push((
                    kind,
                    self.endpoints[a].min(self.endpoints[b]),
                    self.endpoints[a].max(self.endpoints[b]),
                ));
            }
        }
        for (a, &b) in self.arc.iter().enumerate() {
            if a < b {
                lines.push((
                    1,
                    self.endpoints[a].min(self.endpoints[b]),
                    self.endpoints[a].max(self.endpoints[b]),
                ));
            }
        }
        lines.sort();
        for (kind, a, b) in lines {
            let tag = ["strand", "arc", "band"][kind as usize];
            writeln!(out, "{tag} {a} {b}").unwrap();
        }
        for [x, y] in &self.surgeries {
            writeln!(out, "surgery {x} {y}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::{feet_placement, pair_iterative, Direction, Pair};

    fn seq(s: &str) -> SignSeq {
        s.parse().unwrap()
    }

    fn feet(a: Site, b: Site) -> BandFeet {
        BandFeet {
            band: Pair::new(0, 0),
            sites: [a, b],
        }
    }

    #[test]
    fn base_counts() {
        assert_eq!(SpliceDiagram::standard(1).count_components(), 1);
        assert_eq!(SpliceDiagram::standard(2).count_components(), 2);
        assert_eq!(SpliceDiagram::standard(3).count_components(), 1);
        assert_eq!(SpliceDiagram::standard(5).count_components(), 1);
    }

    #[test]
    fn three_box_trace_visits_every_corner() {
        // NW0 SE0 SW1 NE1 NW2 SE2 SW0 NE0 NW1 SE1 SW2 NE2, back to NW0.
        let d = SpliceDiagram::standard(3);
        let ids = d.component_ids();
        assert_eq!(ids.len(), 12);
        assert!(ids.iter().all(|&c| c == 0));
    }

    #[test]
    fn model_knot_outer_bands_split_off_unknots() {
        let s = seq("+-+-+");
        let a = feet_placement(&pair_iterative(&s, Direction::Ccw).unwrap());
        let mut d = SpliceDiagram::build(&s);
        let mut counts = vec![d.count_components()];
        for f in &a {
            d = d.apply_band(f).unwrap();
            counts.push(d.count_components());
        }
        assert_eq!(counts, [1, 2, 3]);

        let b = feet_placement(&pair_iterative(&s, Direction::Cw).unwrap());
        for f in &b {
            d = d.apply_band(f).unwrap();
            counts.push(d.count_components());
        }
        assert_eq!(counts, [1, 2, 3, 2, 1]);
    }

    #[test]
    fn fusion_and_fission() {
        // Two boxes: two components. A band between arcs on different
        // components fuses them.
        let d = SpliceDiagram::standard(2);
        let ids = d.component_ids();
        let ne0 = ids[corner_id(0, Corner::NE)];
        let se0 = ids[corner_id(0, Corner::SE)];
        assert_ne!(ne0, se0);
        let fused = d
            .apply_band(&feet(
                Site::new(Layer::Outer, 0, Slot::Start),
                Site::new(Layer::Inner, 0, Slot::Start),
            ))
            .unwrap();
        assert_eq!(fused.count_components(), 1);

        // Both feet on the single component of a one-box diagram: fission.
        let d = SpliceDiagram::standard(1);
        let split = d
            .apply_band(&feet(
                Site::new(Layer::Outer, 0, Slot::Start),
                Site::new(Layer::Outer, 0, Slot::End),
            ))
            .unwrap();
        assert_eq!(split.count_components(), 2);
    }

    #[test]
    fn stale_and_bad_sites() {
        let d = SpliceDiagram::standard(3);
        let s0 = Site::new(Layer::Outer, 0, Slot::Start);
        let s1 = Site::new(Layer::Outer, 1, Slot::End);
        let s2 = Site::new(Layer::Inner, 2, Slot::End);
        let once = d.apply_band(&feet(s0, s1)).unwrap();
        assert!(matches!(once.apply_band(&feet(s0, s2)), Err(Error::StaleSite(s)) if s == s0));
        assert!(matches!(
            d.apply_band(&feet(s0, s0)),
            Err(Error::SameSite(_))
        ));
        let far = Site::new(Layer::Inner, 3, Slot::Start);
        assert!(matches!(
            d.apply_band(&feet(s0, far)),
            Err(Error::NoSuchSite(..))
        ));
    }

    #[test]
    fn two_feet_on_one_arc() {
        let d = SpliceDiagram::standard(3);
        let a = d
            .apply_band(&feet(
                Site::new(Layer::Outer, 0, Slot::End),
                Site::new(Layer::Outer, 1, Slot::Start),
            ))
            .unwrap();
        let b = a
            .apply_band(&feet(
                Site::new(Layer::Outer, 0, Slot::Start),
                Site::new(Layer::Outer, 2, Slot::End),
            ))
            .unwrap();
        assert_eq!(b.surgeries().len(), 2);
        // every endpoint still has both partners
        assert!(b.strand.iter().chain(&b.arc).all(|&p| p != usize::MAX));
    }

    #[test]
    fn dump_of_single_box() {
        let expected = "\
boxes 1
components 1
strand NW0 SE0
strand NE0 SW0
arc NW0 NE0
arc SW0 SE0
";
        assert_eq!(SpliceDiagram::standard(1).dump(), expected);
    }
}
