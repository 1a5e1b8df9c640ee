//! Network data model: nodes, directed links, link capacities,
//! serialization, and deterministic instance generation.
//!
//! Node `0` is the source and node `n_relays + 1` the destination. A link
//! `i -> j` carries a fixed capacity in bits per channel use; the source
//! never receives and the destination never transmits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directed link `from -> to` with its capacity in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub capacity: f64,
}

/// Directed weighted graph of a 1-2-1 network.
///
/// Links are stored sorted by `(from, to)` and validated on construction:
/// no link into the source, none out of the destination, no self-loops, at
/// most one link per ordered pair, and finite nonnegative capacities.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n_relays: usize,
    links: Vec<Link>,
}

/// Undirected support of a network: edge `(i, j)` with `i < j` is present
/// whenever the network has a link `i -> j` or `j -> i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedSupport {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Network {
    pub fn new(n_relays: usize, mut links: Vec<Link>) -> Result<Self> {
        let dest = n_relays + 1;
        for l in &links {
            if l.from == l.to {
                return Err(Error::SelfLoop { node: l.from });
            }
            if l.to == 0 {
                return Err(Error::LinkIntoSource { from: l.from, to: l.to });
            }
            if l.from == dest {
                return Err(Error::LinkOutOfDestination { from: l.from, to: l.to });
            }
            if l.from > dest || l.to > dest {
                return Err(Error::NodeOutOfRange { from: l.from, to: l.to, max_node: dest });
            }
            if !l.capacity.is_finite() || l.capacity < 0.0 {
                return Err(Error::InvalidLinkCapacity {
                    from: l.from,
                    to: l.to,
                    capacity: l.capacity,
                });
            }
        }
        links.sort_by(|a, b| (a.from, a.to).cmp(&(b.from, b.to)));
        for w in links.windows(2) {
            if w[0].from == w[1].from && w[0].to == w[1].to {
                return Err(Error::DuplicateLink { from: w[0].from, to: w[0].to });
            }
        }
        Ok(Network { n_relays, links })
    }

    pub fn n_relays(&self) -> usize {
        self.n_relays
    }

    /// Total node count, `n_relays + 2`.
    pub fn node_count(&self) -> usize {
        self.n_relays + 2
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn destination(&self) -> usize {
        self.n_relays + 1
    }

    /// Links sorted by `(from, to)`.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Index of link `from -> to` in [`Network::links`], if present.
    pub fn link_index(&self, from: usize, to: usize) -> Option<usize> {
        self.links
            .binary_search_by(|l| (l.from, l.to).cmp(&(from, to)))
            .ok()
    }

    pub fn has_source_out(&self) -> bool {
        self.links.iter().any(|l| l.from == 0)
    }

    pub fn has_destination_in(&self) -> bool {
        let dest = self.destination();
        self.links.iter().any(|l| l.to == dest)
    }

    /// Undirected support graph (each link direction collapsed onto one edge).
    pub fn support(&self) -> UndirectedSupport {
        let mut edges: Vec<(usize, usize)> = self
            .links
            .iter()
            .map(|l| (l.from.min(l.to), l.from.max(l.to)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        UndirectedSupport { vertex_count: self.node_count(), edges }
    }

    /// Parse a network document (see the JSON schema in the README).
    ///
    /// Capacities are taken directly from `capacity` fields, or computed via
    /// [`link_capacity`] when a link gives `(h_re, h_im, power)` instead.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: NetworkDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let mut links = Vec::with_capacity(doc.links.len());
        for spec in doc.links {
            let link = match spec {
                LinkDoc::Direct { from, to, capacity } => Link { from, to, capacity },
                LinkDoc::Gain { from, to, h_re, h_im, power } => {
                    if !(power >= 0.0) {
                        return Err(Error::NegativePower { from, to, power });
                    }
                    Link { from, to, capacity: link_capacity(h_re, h_im, power)? }
                }
            };
            links.push(link);
        }
        Network::new(doc.n_relays, links)
    }

    /// Serialize to the network JSON schema with links sorted by `(from, to)`.
    pub fn to_json_string(&self) -> String {
        let doc = NetworkDocRef { n_relays: self.n_relays, links: &self.links };
        serde_json::to_string_pretty(&doc).expect("network serialization cannot fail")
    }
}

#[derive(Serialize)]
struct NetworkDocRef<'a> {
    n_relays: usize,
    links: &'a [Link],
}

#[derive(Deserialize)]
struct NetworkDoc {
    n_relays: usize,
    links: Vec<LinkDoc>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LinkDoc {
    Direct { from: usize, to: usize, capacity: f64 },
    Gain { from: usize, to: usize, h_re: f64, h_im: f64, power: f64 },
}

impl UndirectedSupport {
    /// Build a support graph from explicit edges. Edges are normalized to
    /// `i < j`, sorted, and deduplicated.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut norm: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a != b, "support edges cannot be self-loops");
                assert!(a < vertex_count && b < vertex_count, "support edge out of range");
                (a.min(b), a.max(b))
            })
            .collect();
        norm.sort_unstable();
        norm.dedup();
        UndirectedSupport { vertex_count, edges: norm }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges sorted by `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok()
    }

    /// Indices of edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(k, _)| k)
            .collect()
    }
}

/// Link capacity `log2(1 + P * |h|^2)` for channel gain `h` and power `P`.
pub fn link_capacity(h_re: f64, h_im: f64, power: f64) -> Result<f64> {
    if !(power >= 0.0) {
        return Err(Error::InvalidPower { power });
    }
    Ok((1.0 + power * (h_re * h_re + h_im * h_im)).log2())
}

/// Deterministically generate a random network.
///
/// Every permitted ordered pair `(i, j)` with `i in [0, N]`, `j in [1, N+1]`,
/// `i != j` is included independently with probability `density`; capacities
/// are uniform on `[0.1, 10]`. When `density > 0` the result always has at
/// least one link out of the source and one into the destination.
pub fn generate_random_network(n_relays: usize, density: f64, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dest = n_relays + 1;
    let mut links = Vec::new();
    for from in 0..=n_relays {
        for to in 1..=dest {
            if from == to {
                continue;
            }
            if rng.gen::<f64>() < density {
                links.push(Link { from, to, capacity: rng.gen_range(0.1..=10.0) });
            }
        }
    }
    if density > 0.0 {
        if !links.iter().any(|l| l.from == 0) {
            let to = rng.gen_range(1..=dest);
            links.push(Link { from: 0, to, capacity: rng.gen_range(0.1..=10.0) });
        }
        if !links.iter().any(|l| l.to == dest) {
            let from = rng.gen_range(0..=n_relays);
            links.push(Link { from, to: dest, capacity: rng.gen_range(0.1..=10.0) });
        }
    }
    Network::new(n_relays, links).expect("generated links are valid by construction")
}
