//! Labelings, states and the toric promotion map.
//!
//! Labels are `1..=ν` and wrap around (`ν + 1` is `1`). A labeling is kept
//! together with its inverse so that both "label of a vertex" and "vertex
//! carrying a label" are O(1).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::StateError;
use crate::graph::SimpleGraph;
use crate::theorems::CrossingEvent;

#[inline]
pub fn next_label(label: usize, size: usize) -> usize {
    label % size + 1
}

#[inline]
pub fn prev_label(label: usize, size: usize) -> usize {
    (label + size - 2) % size + 1
}

/// A bijection from vertices `0..ν` onto labels `1..=ν`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    label_of: Vec<usize>,
    vertex_of: Vec<usize>,
}

impl Labeling {
    /// `label_of[v]` is the label of vertex `v` (one-line notation).
    pub fn new(label_of: Vec<usize>) -> Result<Self, StateError> {
        let n = label_of.len();
        let mut vertex_of = vec![usize::MAX; n];
        for (v, &label) in label_of.iter().enumerate() {
            if label == 0 || label > n || vertex_of[label - 1] != usize::MAX {
                return Err(StateError::NotABijection(n));
            }
            vertex_of[label - 1] = v;
        }
        if n == 0 {
            return Err(StateError::NotABijection(0));
        }
        Ok(Labeling {
            label_of,
            vertex_of,
        })
    }

    pub fn identity(size: usize) -> Self {
        Labeling {
            label_of: (1..=size).collect(),
            vertex_of: (0..size).collect(),
        }
    }

    /// Parses one-line notation: `"4123"` for up to nine vertices, or a
    /// comma/space separated list such as `"10,1,2,3,4,5,6,7,8,9"`.
    pub fn from_one_line(text: &str) -> Result<Self, StateError> {
        let text = text.trim();
        let bad = || StateError::Parse(text.to_string());
        let labels: Vec<usize> = if text.contains([',', ' ']) {
            text.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Labeling::new(labels)
    }

    /// One-line notation; digits are concatenated when every label is a
    /// single digit, otherwise comma separated.
    pub fn one_line(&self) -> String {
        if self.size() <= 9 {
            self.label_of.iter().map(|l| l.to_string()).collect()
        } else {
            let parts: Vec<String> = self.label_of.iter().map(|l| l.to_string()).collect();
            parts.join(",")
        }
    }

    pub fn size(&self) -> usize {
        self.label_of.len()
    }

    #[inline]
    pub fn label(&self, vertex: usize) -> usize {
        self.label_of[vertex]
    }

    #[inline]
    pub fn vertex(&self, label: usize) -> usize {
        self.vertex_of[label - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label_of
    }

    /// Composes the transposition of labels `a` and `b` with this labeling.
    #[inline]
    pub fn swap_labels(&mut self, a: usize, b: usize) {
        let (va, vb) = (self.vertex_of[a - 1], self.vertex_of[b - 1]);
        self.label_of.swap(va, vb);
        self.vertex_of.swap(a - 1, b - 1);
    }

    /// Swaps the labels carried by vertices `u` and `w`.
    pub fn swap_vertices(&mut self, u: usize, w: usize) {
        let (a, b) = (self.label_of[u], self.label_of[w]);
        self.swap_labels(a, b);
    }

    /// Every label shifted up by one, wrapping `ν` to `1`.
    pub fn shifted(&self, by: usize) -> Labeling {
        let n = self.size();
        let label_of: Vec<usize> = self
            .label_of
            .iter()
            .map(|&l| (l - 1 + by) % n + 1)
            .collect();
        Labeling::new(label_of).expect("shift preserves bijectivity")
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// A labeling together with the active label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    labeling: Labeling,
    active: usize,
}

/// Wire form of a state: `{"labeling": [l_1, ...], "active": i}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StateJson {
    pub labeling: Vec<usize>,
    pub active: usize,
}

impl State {
    pub fn new(labeling: Labeling, active: usize) -> Result<Self, StateError> {
        let size = labeling.size();
        if active == 0 || active > size {
            return Err(StateError::ActiveOutOfRange { active, size });
        }
        Ok(State { labeling, active })
    }

    pub fn parse(one_line: &str, active: usize) -> Result<Self, StateError> {
        State::new(Labeling::from_one_line(one_line)?, active)
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn active(&self) -> usize {
        self.active
    }

    pub fn size(&self) -> usize {
        self.labeling.size()
    }

    /// Vertex carrying the active label.
    #[inline]
    pub fn coin(&self) -> usize {
        self.labeling.vertex(self.active)
    }

    pub fn check_graph(&self, g: &SimpleGraph) -> Result<(), StateError> {
        if self.size() == g.vertex_count() {
            Ok(())
        } else {
            Err(StateError::SizeMismatch {
                state: self.size(),
                graph: g.vertex_count(),
            })
        }
    }

    /// One toric promotion step in place. Returns `true` when labels were
    /// swapped.
    #[inline]
    pub fn advance(&mut self, g: &SimpleGraph) -> bool {
        let n = self.size();
        let i = self.active;
        let j = next_label(i, n);
        let swapped = !g.is_adjacent(self.labeling.vertex(i), self.labeling.vertex(j));
        if swapped {
            self.labeling.swap_labels(i, j);
        }
        self.active = j;
        swapped
    }

    /// Inverse of [`State::advance`].
    #[inline]
    pub fn retreat(&mut self, g: &SimpleGraph) {
        let n = self.size();
        let j = self.active;
        let i = prev_label(j, n);
        if !g.is_adjacent(self.labeling.vertex(i), self.labeling.vertex(j)) {
            self.labeling.swap_labels(i, j);
        }
        self.active = i;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateJson {
            labeling: self.labeling.label_of.clone(),
            active: self.active,
        })
        .expect("state serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, StateError> {
        let raw: StateJson =
            serde_json::from_str(text).map_err(|e| StateError::Json(e.to_string()))?;
        State::new(Labeling::new(raw.labeling)?, raw.active)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.labeling, self.active)
    }
}

pub fn tpro_step(g: &SimpleGraph, s: &State) -> State {
    let mut next = s.clone();
    next.advance(g);
    next
}

pub fn tpro_inverse_step(g: &SimpleGraph, s: &State) -> State {
    let mut prev = s.clone();
    prev.retreat(g);
    prev
}

/// Shifts every label and the active label up by one.
pub fn cyc(s: &State) -> State {
    State {
        labeling: s.labeling.shifted(1),
        active: next_label(s.active, s.size()),
    }
}

/// `ν!·ν + 1`, saturating.
pub fn default_cap(size: usize) -> u64 {
    (1..=size as u64)
        .try_fold(size as u64, |acc, k| acc.checked_mul(k))
        .and_then(|x| x.checked_add(1))
        .unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub length: u64,
    pub start: State,
    pub events: Option<Vec<CrossingEvent>>,
}

/// Length of the orbit through `s`. Since promotion is a bijection the
/// first state to recur is the start itself, so only the start is compared.
pub fn orbit_length(g: &SimpleGraph, s: &State, cap: Option<u64>) -> Result<OrbitReport, StateError> {
    s.check_graph(g)?;
    let cap = cap.unwrap_or_else(|| default_cap(s.size()));
    let length = orbit_length_raw(g, s, cap)?;
    Ok(OrbitReport {
        length,
        start: s.clone(),
        events: None,
    })
}

pub(crate) fn orbit_length_raw(g: &SimpleGraph, s: &State, cap: u64) -> Result<u64, StateError> {
    let mut cur = s.clone();
    let mut steps = 0u64;
    loop {
        cur.advance(g);
        steps += 1;
        if cur == *s {
            return Ok(steps);
        }
        if steps >= cap {
            return Err(StateError::CapExceeded { cap });
        }
    }
}

/// The orbit through `s` as a list of states, starting with `s` and
/// ending just before it recurs.
pub fn orbit_states(g: &SimpleGraph, s: &State, cap: Option<u64>) -> Result<Vec<State>, StateError> {
    s.check_graph(g)?;
    let cap = cap.unwrap_or_else(|| default_cap(s.size()));
    let mut out = vec![s.clone()];
    let mut cur = s.clone();
    loop {
        cur.advance(g);
        if cur == *s {
            return Ok(out);
        }
        if out.len() as u64 >= cap {
            return Err(StateError::CapExceeded { cap });
        }
        out.push(cur.clone());
    }
}
