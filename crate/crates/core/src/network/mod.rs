//! Node placement, radio-range neighbourhoods and encounter-graph metrics.

mod graph;

pub use graph::{
    average_path_length, clustering_coefficient, disconnected_ratio, EncounterGraph,
    EncounterMetrics,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("node id {0} appears more than once")]
    DuplicateId(NodeId),
    #[error("centroid of an empty point set")]
    EmptyCentroid,
    #[error("radio range must be positive, got {0}")]
    BadRange(f64),
    #[error("invalid area {0}x{1}")]
    BadArea(f64, f64),
    #[error("node {id}: {reason}")]
    BadNode { id: NodeId, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Position) -> f64 {
        distance(*self, *other)
    }
}

/// Euclidean distance in metres.
pub fn distance(a: Position, b: Position) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Arithmetic mean of the positions.
pub fn centroid(points: &[Position]) -> Result<Position, NetworkError> {
    if points.is_empty() {
        return Err(NetworkError::EmptyCentroid);
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    Ok(Position::new(sx / n, sy / n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Role {
    Head,
    #[default]
    Member,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub pos: Position,
    pub residual_energy: f64,
    pub alive: bool,
    pub role: Role,
    /// Encounters this round, i.e. the node's degree in the encounter graph.
    pub queue_size: u32,
}

impl Node {
    pub fn new(id: NodeId, pos: Position, energy: f64) -> Self {
        Self {
            id,
            pos,
            residual_energy: energy,
            alive: energy > 0.0,
            role: Role::Member,
            queue_size: 0,
        }
    }
}

/// Deployment snapshot: nodes sorted by id, field size, sink and radio range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TopologyDoc", into = "TopologyDoc")]
pub struct Topology {
    nodes: Vec<Node>,
    area: (f64, f64),
    bs_pos: Position,
    radio_range: f64,
    initial_energy: f64,
}

impl Topology {
    pub fn new(
        mut nodes: Vec<Node>,
        area: (f64, f64),
        bs_pos: Position,
        radio_range: f64,
        initial_energy: f64,
    ) -> Result<Self, NetworkError> {
        if !(radio_range > 0.0 && radio_range.is_finite()) {
            return Err(NetworkError::BadRange(radio_range));
        }
        if !(area.0 > 0.0 && area.1 > 0.0 && area.0.is_finite() && area.1.is_finite()) {
            return Err(NetworkError::BadArea(area.0, area.1));
        }
        nodes.sort_by_key(|n| n.id);
        if let Some(w) = nodes.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(NetworkError::DuplicateId(w[0].id));
        }
        for n in &nodes {
            let bad = |reason: &str| NetworkError::BadNode {
                id: n.id,
                reason: reason.to_string(),
            };
            if !(n.pos.x.is_finite() && n.pos.y.is_finite()) {
                return Err(bad("non-finite position"));
            }
            if !(n.residual_energy >= 0.0 && n.residual_energy <= initial_energy) {
                return Err(bad("energy outside [0, initial energy]"));
            }
        }
        Ok(Self {
            nodes,
            area,
            bs_pos,
            radio_range,
            initial_energy,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub(crate) fn nodes_mut(&mut self) -> &mut [Node] {
        &mut self.nodes
    }

    pub fn area(&self) -> (f64, f64) {
        self.area
    }

    /// Length of the field diagonal.
    pub fn diagonal(&self) -> f64 {
        self.area.0.hypot(self.area.1)
    }

    pub fn bs_pos(&self) -> Position {
        self.bs_pos
    }

    pub fn radio_range(&self) -> f64 {
        self.radio_range
    }

    pub fn initial_energy(&self) -> f64 {
        self.initial_energy
    }

    pub fn index_of(&self, id: NodeId) -> Result<usize, NetworkError> {
        self.nodes
            .binary_search_by_key(&id, |n| n.id)
            .map_err(|_| NetworkError::UnknownNode(id))
    }

    pub fn node(&self, id: NodeId) -> Result<&Node, NetworkError> {
        Ok(&self.nodes[self.index_of(id)?])
    }

    pub fn alive(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.alive)
    }

    pub fn alive_count(&self) -> usize {
        self.alive().count()
    }

    /// Alive nodes other than `id` within radio range (boundary included).
    pub fn neighbors(&self, id: NodeId) -> Result<Vec<NodeId>, NetworkError> {
        let me = self.node(id)?;
        Ok(self
            .alive()
            .filter(|n| n.id != id && distance(n.pos, me.pos) <= self.radio_range)
            .map(|n| n.id)
            .collect())
    }

    /// Centroid of the alive nodes, `None` once every node is dead.
    pub fn alive_centroid(&self) -> Option<Position> {
        let pts: Vec<Position> = self.alive().map(|n| n.pos).collect();
        centroid(&pts).ok()
    }

    /// Rebuilds the encounter graph and stores each node's degree as its
    /// queue size (dead nodes get zero).
    pub fn refresh_encounters(&mut self) -> EncounterGraph {
        let graph = EncounterGraph::from_topology(self);
        for node in &mut self.nodes {
            node.queue_size = 0;
        }
        for (v, id) in graph.vertices().iter().enumerate() {
            let idx = self.index_of(*id).expect("graph vertex is a topology node");
            self.nodes[idx].queue_size = graph.degree(v) as u32;
        }
        graph
    }

    pub fn total_residual(&self) -> f64 {
        self.nodes.iter().map(|n| n.residual_energy).sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: NodeId,
    x: f64,
    y: f64,
    energy: f64,
}

/// Replayable deployment file.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyDoc {
    area: [f64; 2],
    bs_pos: [f64; 2],
    radio_range: f64,
    initial_energy: f64,
    nodes: Vec<NodeDoc>,
}

impl TryFrom<TopologyDoc> for Topology {
    type Error = NetworkError;

    fn try_from(doc: TopologyDoc) -> Result<Self, Self::Error> {
        let nodes = doc
            .nodes
            .into_iter()
            .map(|n| Node::new(n.id, Position::new(n.x, n.y), n.energy))
            .collect();
        Topology::new(
            nodes,
            (doc.area[0], doc.area[1]),
            Position::new(doc.bs_pos[0], doc.bs_pos[1]),
            doc.radio_range,
            doc.initial_energy,
        )
    }
}

impl From<Topology> for TopologyDoc {
    fn from(t: Topology) -> Self {
        TopologyDoc {
            area: [t.area.0, t.area.1],
            bs_pos: [t.bs_pos.x, t.bs_pos.y],
            radio_range: t.radio_range,
            initial_energy: t.initial_energy,
            nodes: t
                .nodes
                .into_iter()
                .map(|n| NodeDoc {
                    id: n.id,
                    x: n.pos.x,
                    y: n.pos.y,
                    energy: n.residual_energy,
                })
                .collect(),
        }
    }
}
