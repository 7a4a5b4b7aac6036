//! Stone and coin diagrams.
//!
//! A state `(σ, i)` on a graph with `ν` vertices is drawn on a cycle with
//! positions `1..=ν` in clockwise order: the replica of vertex `v` sits at
//! position `σ(v)` and the stone sits at position `i`. The coin marks the
//! vertex whose replica is on the stone.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::dynamics::{Labeling, State};
use crate::error::DiagramError;
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StoneDiagram {
    /// `positions[p - 1]` is the vertex whose replica sits at position `p`.
    positions: Vec<usize>,
    stone_at: usize,
    coin_at: usize,
}

impl StoneDiagram {
    pub fn new(positions: Vec<usize>, stone_at: usize, coin_at: usize) -> Result<Self, DiagramError> {
        let n = positions.len();
        let mut seen = vec![false; n];
        for &r in &positions {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(DiagramError::NotABijection);
            }
        }
        if n == 0 {
            return Err(DiagramError::NotABijection);
        }
        if stone_at == 0 || stone_at > n {
            return Err(DiagramError::StoneOutOfRange(stone_at));
        }
        if positions[stone_at - 1] != coin_at {
            return Err(DiagramError::CoinMismatch {
                coin: coin_at,
                on_stone: positions[stone_at - 1],
            });
        }
        Ok(StoneDiagram {
            positions,
            stone_at,
            coin_at,
        })
    }

    pub fn from_state(s: &State) -> Self {
        let n = s.size();
        let mut positions = vec![0; n];
        for v in 0..n {
            positions[s.labeling().label(v) - 1] = v;
        }
        StoneDiagram {
            positions,
            stone_at: s.active(),
            coin_at: s.coin(),
        }
    }

    pub fn to_state(&self) -> Result<State, DiagramError> {
        // Re-validate: diagrams can be built field by field in tests.
        let sd = StoneDiagram::new(self.positions.clone(), self.stone_at, self.coin_at)?;
        let mut label_of = vec![0; sd.size()];
        for (p, &r) in sd.positions.iter().enumerate() {
            label_of[r] = p + 1;
        }
        let labeling = Labeling::new(label_of).map_err(|_| DiagramError::NotABijection)?;
        State::new(labeling, sd.stone_at).map_err(|_| DiagramError::StoneOutOfRange(sd.stone_at))
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn stone_at(&self) -> usize {
        self.stone_at
    }

    pub fn coin_at(&self) -> usize {
        self.coin_at
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Vertex whose replica sits at position `p` (1-based).
    pub fn replica_at(&self, p: usize) -> usize {
        self.positions[p - 1]
    }

    /// Position (1-based) of the replica of `vertex`.
    pub fn position_of(&self, vertex: usize) -> usize {
        self.positions.iter().position(|&r| r == vertex).expect("replica present") + 1
    }

    fn clockwise(&self, p: usize) -> usize {
        p % self.size() + 1
    }

    /// One promotion step: slide the stone clockwise if the replica ahead is
    /// adjacent to the one on the stone, otherwise carry the stone's replica
    /// past it.
    pub fn step(&mut self, g: &SimpleGraph) {
        let here = self.stone_at;
        let ahead = self.clockwise(here);
        let on_stone = self.positions[here - 1];
        let facing = self.positions[ahead - 1];
        if g.is_adjacent(on_stone, facing) {
            self.coin_at = facing;
        } else {
            self.positions.swap(here - 1, ahead - 1);
        }
        self.stone_at = ahead;
    }

    /// Rotates all replicas and the stone `k` positions clockwise.
    pub fn rotated(&self, k: usize) -> StoneDiagram {
        let n = self.size();
        let mut positions = vec![0; n];
        for (p, &r) in self.positions.iter().enumerate() {
            positions[(p + k) % n] = r;
        }
        StoneDiagram {
            positions,
            stone_at: (self.stone_at - 1 + k) % n + 1,
            coin_at: self.coin_at,
        }
    }

    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for (p, r) in self.positions.iter().enumerate() {
            write!(out, "{}:{} ", p + 1, r).unwrap();
        }
        write!(out, "| stone={} coin={}", self.stone_at, self.coin_at).unwrap();
        out
    }
}

pub fn from_state(s: &State) -> StoneDiagram {
    StoneDiagram::from_state(s)
}

pub fn to_state(sd: &StoneDiagram) -> Result<State, DiagramError> {
    sd.to_state()
}

pub fn sd_step(g: &SimpleGraph, sd: &StoneDiagram) -> StoneDiagram {
    let mut next = sd.clone();
    next.step(g);
    next
}

/// The `k` with `b = cyc^k(a)`, if any. Replicas are distinct, so the
/// position of one replica fixes the only candidate.
pub fn is_cyclic_rotation(a: &StoneDiagram, b: &StoneDiagram) -> Result<Option<usize>, DiagramError> {
    let n = a.size();
    if n != b.size() {
        return Err(DiagramError::SizeMismatch(n, b.size()));
    }
    let k = (b.position_of(0) + n - a.position_of(0)) % n;
    Ok((a.rotated(k) == *b).then_some(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Dot,
}

impl FromStr for RenderFormat {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            "dot" => Ok(RenderFormat::Dot),
            other => Err(DiagramError::UnknownFormat(other.to_string())),
        }
    }
}

const PANEL: f64 = 180.0;
const RADIUS: f64 = 60.0;

fn point_on_circle(cx: f64, cy: f64, r: f64, p: usize, n: usize) -> (f64, f64) {
    // Position 1 at twelve o'clock, increasing clockwise.
    let angle = std::f64::consts::TAU * (p - 1) as f64 / n as f64;
    (cx + r * angle.sin(), cy - r * angle.cos())
}

/// Renders one panel per diagram. Output bytes depend only on the input.
pub fn render(sequence: &[StoneDiagram], format: RenderFormat) -> Result<String, DiagramError> {
    if sequence.is_empty() {
        return Err(DiagramError::EmptySequence);
    }
    let out = match format {
        RenderFormat::Ascii => {
            let mut out = String::new();
            for sd in sequence {
                out.push_str(&sd.render_ascii());
                out.push('\n');
            }
            out
        }
        RenderFormat::Svg => render_svg(sequence),
        RenderFormat::Dot => render_dot(sequence),
    };
    Ok(out)
}

fn render_svg(sequence: &[StoneDiagram]) -> String {
    let width = PANEL * sequence.len() as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL:.0}" viewBox="0 0 {width:.0} {PANEL:.0}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    for (t, sd) in sequence.iter().enumerate() {
        let n = sd.size();
        let cx = PANEL * t as f64 + PANEL / 2.0;
        let cy = PANEL / 2.0;
        writeln!(out, r#"  <g id="panel-{t}">"#).unwrap();
        writeln!(
            out,
            r#"    <circle cx="{cx:.2}" cy="{cy:.2}" r="{RADIUS:.2}" fill="none" stroke="black"/>"#
        )
        .unwrap();
        for p in 1..=n {
            let (x, y) = point_on_circle(cx, cy, RADIUS, p, n);
            if p == sd.stone_at() {
                writeln!(
                    out,
                    r##"    <circle class="stone" cx="{x:.2}" cy="{y:.2}" r="11" fill="#999999"/>"##
                )
                .unwrap();
            }
            let (lx, ly) = point_on_circle(cx, cy, RADIUS + 20.0, p, n);
            writeln!(
                out,
                r#"    <text class="position" x="{lx:.2}" y="{ly:.2}" text-anchor="middle">{p}</text>"#
            )
            .unwrap();
            writeln!(
                out,
                r#"    <text class="replica" x="{x:.2}" y="{:.2}" text-anchor="middle" font-weight="bold">v{}</text>"#,
                y + 4.0,
                sd.replica_at(p)
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"    <text class="coin" x="{cx:.2}" y="{:.2}" text-anchor="middle">t={t} coin=v{}</text>"#,
            PANEL - 8.0,
            sd.coin_at()
        )
        .unwrap();
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn render_dot(sequence: &[StoneDiagram]) -> String {
    let mut out = String::from("digraph stone_diagrams {\n");
    for (t, sd) in sequence.iter().enumerate() {
        let n = sd.size();
        writeln!(out, "  subgraph cluster_{t} {{").unwrap();
        writeln!(out, "    label=\"t={t} coin=v{}\";", sd.coin_at()).unwrap();
        for p in 1..=n {
            let shape = if p == sd.stone_at() { "doublecircle" } else { "circle" };
            writeln!(
                out,
                "    t{t}p{p} [label=\"{p}:v{}\", shape={shape}];",
                sd.replica_at(p)
            )
            .unwrap();
        }
        for p in 1..=n {
            writeln!(out, "    t{t}p{p} -> t{t}p{};", p % n + 1).unwrap();
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{cyc, tpro_step};
    use crate::graph::GraphFamily;

    #[test]
    fn identity_diagram() {
        let sd = from_state(&State::parse("123", 1).unwrap());
        assert_eq!(sd.positions(), &[0, 1, 2]);
        assert_eq!((sd.stone_at(), sd.coin_at()), (1, 0));
    }

    #[test]
    fn placement_example() {
        // σ = 4123 puts label 2 on vertex 2 (the third vertex).
        let sd = from_state(&State::parse("4123", 2).unwrap());
        assert_eq!(sd.stone_at(), 2);
        assert_eq!(sd.replica_at(2), 2);
        assert_eq!(sd.coin_at(), 2);
        assert_eq!(sd.positions(), &[1, 2, 3, 0]);
        assert_eq!(sd.to_state().unwrap(), State::parse("4123", 2).unwrap());
    }

    #[test]
    fn invalid_diagrams() {
        assert_eq!(
            StoneDiagram::new(vec![0, 0, 1], 1, 0),
            Err(DiagramError::NotABijection)
        );
        assert_eq!(
            StoneDiagram::new(vec![0, 1, 2], 4, 0),
            Err(DiagramError::StoneOutOfRange(4))
        );
        assert_eq!(
            StoneDiagram::new(vec![0, 1, 2], 2, 0),
            Err(DiagramError::CoinMismatch { coin: 0, on_stone: 1 })
        );
    }

    #[test]
    fn step_matches_promotion() {
        let g = GraphFamily::Path(3).build().unwrap();
        let s = State::parse("123", 3).unwrap();
        let sd = sd_step(&g, &from_state(&s));
        assert_eq!(sd, from_state(&tpro_step(&g, &s)));
        // v2 surfed past v0.
        assert_eq!(sd.coin_at(), 2);
    }

    #[test]
    fn complete_graph_never_swaps() {
        let g = GraphFamily::Complete(5).build().unwrap();
        let mut sd = from_state(&State::parse("35142", 4).unwrap());
        let start = sd.positions().to_vec();
        for _ in 0..12 {
            sd.step(&g);
            assert_eq!(sd.positions(), &start[..]);
        }
    }

    #[test]
    fn rotation_detection() {
        let a = from_state(&State::parse("4123", 2).unwrap());
        assert_eq!(is_cyclic_rotation(&a, &a), Ok(Some(0)));
        let b = from_state(&cyc(&cyc(&State::parse("4123", 2).unwrap())));
        assert_eq!(is_cyclic_rotation(&a, &b), Ok(Some(2)));
        assert_eq!(is_cyclic_rotation(&b, &a), Ok(Some(2)));
        let swapped = from_state(&State::parse("4132", 2).unwrap());
        assert_eq!(is_cyclic_rotation(&a, &swapped), Ok(None));
        let small = from_state(&State::parse("12", 1).unwrap());
        assert!(is_cyclic_rotation(&a, &small).is_err());
    }

    #[test]
    fn ascii_golden() {
        let sd = from_state(&State::parse("123", 1).unwrap());
        assert_eq!(
            render(&[sd], RenderFormat::Ascii).unwrap(),
            "1:0 2:1 3:2 | stone=1 coin=0\n"
        );
        assert_eq!(render(&[], RenderFormat::Ascii), Err(DiagramError::EmptySequence));
        assert!("png".parse::<RenderFormat>().is_err());
    }

    #[test]
    fn svg_and_dot_are_deterministic() {
        let seq = vec![
            from_state(&State::parse("4123", 2).unwrap()),
            from_state(&State::parse("1234", 3).unwrap()),
        ];
        let svg = render(&seq, RenderFormat::Svg).unwrap();
        assert_eq!(svg, render(&seq, RenderFormat::Svg).unwrap());
        assert_eq!(svg.matches("<g id=\"panel-").count(), 2);
        assert_eq!(svg.matches("class=\"stone\"").count(), 2);
        let dot = render(&seq, RenderFormat::Dot).unwrap();
        assert_eq!(dot.matches("subgraph cluster_").count(), 2);
        assert!(dot.contains("t0p2 [label=\"2:v2\", shape=doublecircle];"));
    }

    #[test]
    fn twelve_oclock_is_position_one() {
        let (x, y) = point_on_circle(100.0, 100.0, 50.0, 1, 4);
        assert!((x - 100.0).abs() < 1e-9 && (y - 50.0).abs() < 1e-9);
        let (x, _) = point_on_circle(100.0, 100.0, 50.0, 2, 4);
        assert!((x - 150.0).abs() < 1e-9);
    }
}
