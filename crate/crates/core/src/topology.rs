//! k-cycle graphs: `k` cycles glued together at a single central vertex.
//!
//! Cycles are stored in non-increasing order of length and indexed from 1.
//! A vertex on cycle `i` is addressed by its position `1..=l_i`, counted from
//! the arm-A neighbour of the center (position 1) to the arm-B neighbour
//! (position `l_i`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("instance has no cycles")]
    EmptyInstance,
    #[error("cycle #{index} has {length} vertices, at least 2 are required")]
    CycleTooShort { index: usize, length: usize },
    #[error("vertex {0} does not exist in this graph")]
    InvalidVertex(VertexId),
    #[error("malformed vertex id `{0}`")]
    BadVertexId(String),
}

/// A vertex of a k-cycle graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Center,
    /// `cycle` is 1-based in sorted order, `pos` runs over `1..=l_cycle`.
    Cycle {
        cycle: usize,
        pos: usize,
    },
}

impl VertexId {
    pub fn on(cycle: usize, pos: usize) -> Self {
        VertexId::Cycle { cycle, pos }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Center => write!(f, "c"),
            VertexId::Cycle { cycle, pos } => write!(f, "{cycle}:{pos}"),
        }
    }
}

impl FromStr for VertexId {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "c" {
            return Ok(VertexId::Center);
        }
        let bad = || TopologyError::BadVertexId(s.to_string());
        let (c, p) = s.split_once(':').ok_or_else(bad)?;
        let cycle = c.parse().map_err(|_| bad())?;
        let pos = p.parse().map_err(|_| bad())?;
        Ok(VertexId::Cycle { cycle, pos })
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One of the two center-incident paths of a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arm {
    /// Enters the cycle at position 1.
    A,
    /// Enters the cycle at position `l`.
    B,
}

impl Arm {
    pub fn other(self) -> Arm {
        match self {
            Arm::A => Arm::B,
            Arm::B => Arm::A,
        }
    }
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arm::A => "A",
            Arm::B => "B",
        })
    }
}

/// Where a broadcast starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Originator {
    Center,
    OnCycle { cycle: usize, pos: usize },
}

impl Originator {
    pub fn vertex(self) -> VertexId {
        match self {
            Originator::Center => VertexId::Center,
            Originator::OnCycle { cycle, pos } => VertexId::Cycle { cycle, pos },
        }
    }

    pub fn from_vertex(v: VertexId) -> Self {
        match v {
            VertexId::Center => Originator::Center,
            VertexId::Cycle { cycle, pos } => Originator::OnCycle { cycle, pos },
        }
    }

    pub fn is_center(self) -> bool {
        matches!(self, Originator::Center)
    }
}

impl fmt::Display for Originator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.vertex().fmt(f)
    }
}

impl FromStr for Originator {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "center" {
            return Ok(Originator::Center);
        }
        s.parse::<VertexId>().map(Originator::from_vertex)
    }
}

impl Serialize for Originator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Originator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A k-cycle (flower) graph, immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KCycleGraph {
    lengths: Vec<usize>,
    /// `offsets[i]` is the dense index of position 1 on cycle `i + 1`.
    offsets: Vec<usize>,
    n: usize,
}

impl KCycleGraph {
    /// Builds a graph from cycle lengths in any order. Lengths are sorted
    /// non-increasingly with a stable sort.
    pub fn new(lengths: &[usize]) -> Result<Self, TopologyError> {
        Self::with_mapping(lengths).map(|(g, _)| g)
    }

    /// Like [`KCycleGraph::new`], also returning where each input cycle landed:
    /// `mapping[j]` is the 1-based sorted index of input cycle `j + 1`.
    pub fn with_mapping(lengths: &[usize]) -> Result<(Self, Vec<usize>), TopologyError> {
        if lengths.is_empty() {
            return Err(TopologyError::EmptyInstance);
        }
        if let Some((i, &l)) = lengths.iter().enumerate().find(|(_, &l)| l < 2) {
            return Err(TopologyError::CycleTooShort {
                index: i + 1,
                length: l,
            });
        }
        let mut order: Vec<usize> = (0..lengths.len()).collect();
        order.sort_by(|&a, &b| lengths[b].cmp(&lengths[a]));
        let mut mapping = vec![0; lengths.len()];
        for (sorted, &input) in order.iter().enumerate() {
            mapping[input] = sorted + 1;
        }
        let sorted: Vec<usize> = order.iter().map(|&i| lengths[i]).collect();
        let mut offsets = Vec::with_capacity(sorted.len());
        let mut next = 1;
        for &l in &sorted {
            offsets.push(next);
            next += l;
        }
        Ok((
            KCycleGraph {
                lengths: sorted,
                offsets,
                n: next,
            },
            mapping,
        ))
    }

    pub fn k(&self) -> usize {
        self.lengths.len()
    }

    /// Total vertex count, center included.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Length of cycle `i` (1-based). Panics when out of range.
    pub fn len_of(&self, cycle: usize) -> usize {
        self.lengths[cycle - 1]
    }

    pub fn edge_count(&self) -> usize {
        self.lengths.iter().map(|l| l + 1).sum()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match v {
            VertexId::Center => true,
            VertexId::Cycle { cycle, pos } => {
                cycle >= 1 && cycle <= self.k() && pos >= 1 && pos <= self.lengths[cycle - 1]
            }
        }
    }

    fn check(&self, v: VertexId) -> Result<(), TopologyError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(TopologyError::InvalidVertex(v))
        }
    }

    /// Dense index in `0..n`; the center is 0.
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some(match v {
            VertexId::Center => 0,
            VertexId::Cycle { cycle, pos } => self.offsets[cycle - 1] + pos - 1,
        })
    }

    /// Inverse of [`KCycleGraph::index_of`]. O(log k).
    pub fn vertex_at(&self, index: usize) -> VertexId {
        assert!(index < self.n, "vertex index {index} out of range");
        if index == 0 {
            return VertexId::Center;
        }
        let c = self.offsets.partition_point(|&o| o <= index) - 1;
        VertexId::Cycle {
            cycle: c + 1,
            pos: index - self.offsets[c] + 1,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::once(VertexId::Center).chain(
            self.lengths
                .iter()
                .enumerate()
                .flat_map(|(c, &l)| (1..=l).map(move |pos| VertexId::Cycle { cycle: c + 1, pos })),
        )
    }

    /// The center's neighbour on the given arm of `cycle`.
    pub fn arm_end(&self, cycle: usize, arm: Arm) -> VertexId {
        let pos = match arm {
            Arm::A => 1,
            Arm::B => self.len_of(cycle),
        };
        VertexId::Cycle { cycle, pos }
    }

    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, TopologyError> {
        self.check(v)?;
        Ok(match v {
            VertexId::Center => self
                .lengths
                .iter()
                .enumerate()
                .flat_map(|(c, &l)| {
                    [
                        VertexId::Cycle { cycle: c + 1, pos: 1 },
                        VertexId::Cycle { cycle: c + 1, pos: l },
                    ]
                })
                .collect(),
            VertexId::Cycle { cycle, pos } => {
                let l = self.len_of(cycle);
                let prev = if pos == 1 {
                    VertexId::Center
                } else {
                    VertexId::on(cycle, pos - 1)
                };
                let next = if pos == l {
                    VertexId::Center
                } else {
                    VertexId::on(cycle, pos + 1)
                };
                vec![prev, next]
            }
        })
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        match (u, v) {
            (VertexId::Center, VertexId::Center) => false,
            (VertexId::Center, VertexId::Cycle { cycle, pos }) | (VertexId::Cycle { cycle, pos }, VertexId::Center) => {
                self.contains(v) && self.contains(u) && (pos == 1 || pos == self.len_of(cycle))
            }
            (VertexId::Cycle { cycle: c1, pos: p1 }, VertexId::Cycle { cycle: c2, pos: p2 }) => {
                c1 == c2 && self.contains(u) && self.contains(v) && p1.abs_diff(p2) == 1
            }
        }
    }

    pub fn dist_to_center(&self, v: VertexId) -> Result<usize, TopologyError> {
        self.check(v)?;
        Ok(match v {
            VertexId::Center => 0,
            VertexId::Cycle { cycle, pos } => pos.min(self.len_of(cycle) + 1 - pos),
        })
    }

    pub fn check_originator(&self, o: Originator) -> Result<(), TopologyError> {
        self.check(o.vertex())
    }

    /// Distance `d` from the originator to the center (0 for the center).
    pub fn originator_distance(&self, o: Originator) -> Result<usize, TopologyError> {
        self.dist_to_center(o.vertex())
    }

    /// One representative originator per (cycle, distance) class. Positions
    /// `p` and `l + 1 - p` are mirror images, so `p <= (l + 1) / 2` suffices.
    pub fn originator_classes(&self) -> Vec<Originator> {
        self.lengths
            .iter()
            .enumerate()
            .flat_map(|(c, &l)| (1..=l.div_ceil(2)).map(move |pos| Originator::OnCycle { cycle: c + 1, pos }))
            .collect()
    }

    /// Every originator position, the center first.
    pub fn all_originators(&self) -> Vec<Originator> {
        self.vertices().map(Originator::from_vertex).collect()
    }
}

impl fmt::Display for KCycleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap, VecDeque};

    #[test]
    fn construction_examples() {
        let g = KCycleGraph::new(&[6, 5, 2]).unwrap();
        assert_eq!((g.k(), g.n()), (3, 14));
        let g = KCycleGraph::new(&[2]).unwrap();
        assert_eq!((g.k(), g.n()), (1, 3));
        let g = KCycleGraph::new(&[2, 5, 4]).unwrap();
        assert_eq!(g.lengths(), &[5, 4, 2]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(KCycleGraph::new(&[]), Err(TopologyError::EmptyInstance));
        assert_eq!(
            KCycleGraph::new(&[4, 1]),
            Err(TopologyError::CycleTooShort { index: 2, length: 1 })
        );
    }

    #[test]
    fn stable_mapping_for_ties() {
        let (g, map) = KCycleGraph::with_mapping(&[3, 7, 3, 9]).unwrap();
        assert_eq!(g.lengths(), &[9, 7, 3, 3]);
        assert_eq!(map, vec![3, 2, 4, 1]);
    }

    #[test]
    fn neighbor_examples() {
        let g = KCycleGraph::new(&[4]).unwrap();
        let set = |v| g.neighbors(v).unwrap().into_iter().collect::<BTreeSet<_>>();
        assert_eq!(
            set(VertexId::on(1, 2)),
            BTreeSet::from([VertexId::on(1, 1), VertexId::on(1, 3)])
        );
        assert_eq!(
            set(VertexId::on(1, 1)),
            BTreeSet::from([VertexId::Center, VertexId::on(1, 2)])
        );

        let g = KCycleGraph::new(&[2, 2]).unwrap();
        let nb = g.neighbors(VertexId::Center).unwrap();
        assert_eq!(nb.len(), 4);
        assert_eq!(
            nb.into_iter().collect::<BTreeSet<_>>(),
            BTreeSet::from([
                VertexId::on(1, 1),
                VertexId::on(1, 2),
                VertexId::on(2, 1),
                VertexId::on(2, 2)
            ])
        );
        // l = 2 is a triangle through the center
        assert_eq!(
            set2(&g, VertexId::on(1, 1)),
            BTreeSet::from([VertexId::Center, VertexId::on(1, 2)])
        );
        assert_eq!(
            g.neighbors(VertexId::on(3, 1)),
            Err(TopologyError::InvalidVertex(VertexId::on(3, 1)))
        );
    }

    fn set2(g: &KCycleGraph, v: VertexId) -> BTreeSet<VertexId> {
        g.neighbors(v).unwrap().into_iter().collect()
    }

    #[test]
    fn distance_examples() {
        let g = KCycleGraph::new(&[8]).unwrap();
        assert_eq!(g.dist_to_center(VertexId::on(1, 2)).unwrap(), 2);
        let g = KCycleGraph::new(&[5]).unwrap();
        assert_eq!(g.dist_to_center(VertexId::on(1, 3)).unwrap(), 3);
        assert_eq!(g.dist_to_center(VertexId::Center).unwrap(), 0);
        assert!(g.dist_to_center(VertexId::on(1, 6)).is_err());
    }

    #[test]
    fn vertex_id_strings() {
        assert_eq!("c".parse::<VertexId>().unwrap(), VertexId::Center);
        assert_eq!("2:7".parse::<VertexId>().unwrap(), VertexId::on(2, 7));
        assert!("2-7".parse::<VertexId>().is_err());
        assert_eq!(VertexId::on(3, 1).to_string(), "3:1");
        assert_eq!("center".parse::<Originator>().unwrap(), Originator::Center);
    }

    #[test]
    fn dense_index_round_trips() {
        let g = KCycleGraph::new(&[5, 3, 3, 2]).unwrap();
        for (i, v) in g.vertices().enumerate() {
            assert_eq!(g.index_of(v), Some(i));
            assert_eq!(g.vertex_at(i), v);
        }
        assert_eq!(g.vertices().count(), g.n());
    }

    fn bfs(g: &KCycleGraph) -> HashMap<VertexId, usize> {
        let mut dist = HashMap::from([(VertexId::Center, 0)]);
        let mut queue = VecDeque::from([VertexId::Center]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v).unwrap() {
                if !dist.contains_key(&w) {
                    dist.insert(w, dist[&v] + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn structure_is_a_flower(lengths in proptest::collection::vec(2usize..12, 1..6)) {
                let g = KCycleGraph::new(&lengths).unwrap();
                prop_assert_eq!(g.neighbors(VertexId::Center).unwrap().len(), 2 * g.k());
                let mut degree_sum = 0;
                for v in g.vertices() {
                    let nb = g.neighbors(v).unwrap();
                    degree_sum += nb.len();
                    if v != VertexId::Center {
                        prop_assert_eq!(nb.len(), 2);
                    }
                    for w in nb {
                        prop_assert!(g.neighbors(w).unwrap().contains(&v));
                        prop_assert!(g.adjacent(v, w));
                    }
                }
                prop_assert_eq!(degree_sum, 2 * g.edge_count());
                let dist = bfs(&g);
                prop_assert_eq!(dist.len(), g.n());
                for v in g.vertices() {
                    prop_assert_eq!(dist[&v], g.dist_to_center(v).unwrap());
                }
            }
        }
    }
}
