//! Groupcast instances: receivers demanding one message each and holding
//! arbitrary side-information sets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::text::{content_lines, parse_usize};
use crate::graph::{prune_to_uscs, DiGraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Receiver {
    pub demand: usize,
    /// Sorted message indices.
    pub side: Vec<usize>,
    /// Number of identical receivers merged into this one.
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupcastInstance {
    m: usize,
    receivers: Vec<Receiver>,
}

#[derive(Deserialize)]
struct InstanceJson {
    m: usize,
    receivers: Vec<Receiver>,
}

impl<'de> Deserialize<'de> for GroupcastInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = InstanceJson::deserialize(d)?;
        let mut out = GroupcastInstance::new(j.m, Vec::<(usize, Vec<usize>)>::new())
            .map_err(serde::de::Error::custom)?;
        for r in j.receivers {
            if r.multiplicity == 0 {
                return Err(serde::de::Error::custom("multiplicity must be at least 1"));
            }
            out.push(r.demand, r.side, r.multiplicity)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

impl GroupcastInstance {
    /// Receivers with equal demand and side information are merged.
    pub fn new<I, S>(m: usize, receivers: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, S)>,
        S: IntoIterator<Item = usize>,
    {
        let mut out = GroupcastInstance {
            m,
            receivers: Vec::new(),
        };
        for (d, side) in receivers {
            out.push(d, side.into_iter().collect(), 1)?;
        }
        Ok(out)
    }

    fn push(&mut self, demand: usize, mut side: Vec<usize>, multiplicity: usize) -> Result<()> {
        let m = self.m;
        for &x in side.iter().chain([&demand]) {
            if x == 0 || x > m {
                return Err(Error::VertexOutOfRange { vertex: x, n: m });
            }
        }
        side.sort_unstable();
        side.dedup();
        if side.binary_search(&demand).is_ok() {
            return Err(Error::InvalidParams(format!(
                "receiver demanding W_{demand} already holds it"
            )));
        }
        match self
            .receivers
            .iter_mut()
            .find(|r| r.demand == demand && r.side == side)
        {
            Some(r) => r.multiplicity += multiplicity,
            None => self.receivers.push(Receiver {
                demand,
                side,
                multiplicity,
            }),
        }
        Ok(())
    }

    /// One receiver per vertex, demanding its own message.
    pub fn unicast(g: &DiGraph) -> Self {
        let receivers = g
            .vertices()
            .map(|v| (v, g.out_neighbors(v).to_vec()))
            .collect::<Vec<_>>();
        GroupcastInstance::new(g.n(), receivers).expect("graph edges are valid receivers")
    }

    /// The side-information graph when receiver `i` demands `W_i` for all `i`.
    pub fn as_unicast(&self) -> Option<DiGraph> {
        let unicast = self.receivers.len() == self.m
            && self
                .receivers
                .iter()
                .enumerate()
                .all(|(i, r)| r.demand == i + 1 && r.multiplicity == 1);
        unicast.then(|| self.underlying_digraph())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn receivers(&self) -> &[Receiver] {
        &self.receivers
    }

    /// Edge `(u, v)` iff some receiver demands `u` and holds `v`.
    pub fn underlying_digraph(&self) -> DiGraph {
        let mut g = DiGraph::new(self.m);
        for r in &self.receivers {
            for &v in &r.side {
                g.add_edge(r.demand, v).expect("validated receiver");
            }
        }
        g
    }
}

/// Drops every side-information entry whose underlying edge lies on no
/// directed cycle. Removed entries are `(receiver, message)` with receivers
/// numbered from 1 in instance order.
pub fn prune_groupcast(h: &GroupcastInstance) -> (GroupcastInstance, Vec<(usize, usize)>) {
    let (kept, _) = prune_to_uscs(&h.underlying_digraph());
    let mut removed = Vec::new();
    let receivers = h
        .receivers
        .iter()
        .enumerate()
        .map(|(idx, r)| {
            let (keep, drop): (Vec<usize>, Vec<usize>) =
                r.side.iter().partition(|&&v| kept.has_edge(r.demand, v));
            removed.extend(drop.into_iter().map(|v| (idx + 1, v)));
            Receiver {
                demand: r.demand,
                side: keep,
                multiplicity: r.multiplicity,
            }
        })
        .collect();
    (
        GroupcastInstance {
            m: h.m,
            receivers,
        },
        removed,
    )
}

/// Coding setting in which a pruning step is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    Linear,
    Asymptotic,
    OneShotLinear,
    OneShotNonLinear,
}

/// Pruning for a setting; `None` in the one-shot non-linear setting, where
/// removing cycle-free side information can hurt.
pub fn prune_groupcast_for(
    h: &GroupcastInstance,
    setting: Setting,
) -> Option<(GroupcastInstance, Vec<(usize, usize)>)> {
    (setting != Setting::OneShotNonLinear).then(|| prune_groupcast(h))
}

/// Parses `m <int>` followed by `demand <d> side <a1> <a2> ...` lines.
pub fn parse_instance(text: &str) -> Result<GroupcastInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty instance file"))?;
    let m = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["m", m] => parse_usize(hl, m, "message count")?,
        _ => return Err(Error::parse(hl, "expected header 'm <int>'")),
    };
    let mut h = GroupcastInstance::new(m, Vec::<(usize, Vec<usize>)>::new())?;
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ["demand", d, "side", side @ ..] = toks.as_slice() else {
            return Err(Error::parse(lineno, "expected 'demand <d> side <a1> ...'"));
        };
        let d = parse_usize(lineno, d, "message index")?;
        let side = side
            .iter()
            .map(|t| parse_usize(lineno, t, "message index"))
            .collect::<Result<Vec<_>>>()?;
        h.push(d, side, 1)
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
    }
    Ok(h)
}

pub fn parse_instance_any(text: &str) -> Result<GroupcastInstance> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    } else {
        parse_instance(text)
    }
}

/// Text form; merged receivers are written once per multiplicity.
pub fn write_instance(h: &GroupcastInstance) -> String {
    let mut out = format!("m {}\n", h.m);
    for r in &h.receivers {
        let mut line = format!("demand {} side", r.demand);
        for v in &r.side {
            let _ = write!(line, " {v}");
        }
        for _ in 0..r.multiplicity {
            let _ = writeln!(out, "{line}");
        }
    }
    out
}
