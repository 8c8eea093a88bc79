//! Shortest paths for a forward-only car with a minimum turning radius.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    /// Heading in radians, counter-clockwise from +x.
    pub theta: f64,
}

impl Pose {
    pub const fn new(x: f64, y: f64, theta: f64) -> Self {
        Self { x, y, theta }
    }
}

impl From<[f64; 3]> for Pose {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment {
    Left,
    Straight,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PathType {
    Lsl,
    Lsr,
    Rsl,
    Rsr,
    Rlr,
    Lrl,
}

impl PathType {
    pub const ALL: [PathType; 6] = [
        PathType::Lsl,
        PathType::Lsr,
        PathType::Rsl,
        PathType::Rsr,
        PathType::Rlr,
        PathType::Lrl,
    ];

    pub fn segments(self) -> [Segment; 3] {
        use Segment::*;
        match self {
            PathType::Lsl => [Left, Straight, Left],
            PathType::Lsr => [Left, Straight, Right],
            PathType::Rsl => [Right, Straight, Left],
            PathType::Rsr => [Right, Straight, Right],
            PathType::Rlr => [Right, Left, Right],
            PathType::Lrl => [Left, Right, Left],
        }
    }
}

impl fmt::Display for PathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathType::Lsl => "LSL",
            PathType::Lsr => "LSR",
            PathType::Rsl => "RSL",
            PathType::Rsr => "RSR",
            PathType::Rlr => "RLR",
            PathType::Lrl => "LRL",
        };
        f.write_str(s)
    }
}

/// Three-segment path; segment lengths are in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DubinsPath {
    pub start: Pose,
    pub radius: f64,
    pub path_type: PathType,
    pub lengths: [f64; 3],
}

fn mod2pi(theta: f64) -> f64 {
    let v = theta.rem_euclid(TAU);
    // rem_euclid can land on TAU itself, or just below it for tiny negative input
    if TAU - v < 1e-12 {
        0.0
    } else {
        v
    }
}

/// Normalized segment parameters `(t, p, q)` for one word, in units of the radius.
fn word(path_type: PathType, alpha: f64, beta: f64, d: f64) -> Option<[f64; 3]> {
    let (sa, sb) = (alpha.sin(), beta.sin());
    let (ca, cb) = (alpha.cos(), beta.cos());
    let c_ab = (alpha - beta).cos();
    let d_sq = d * d;
    match path_type {
        PathType::Lsl => {
            let tmp0 = d + sa - sb;
            let p_sq = 2.0 + d_sq - 2.0 * c_ab + 2.0 * d * (sa - sb);
            if p_sq < 0.0 {
                return None;
            }
            let tmp1 = (cb - ca).atan2(tmp0);
            Some([mod2pi(tmp1 - alpha), p_sq.sqrt(), mod2pi(beta - tmp1)])
        }
        PathType::Rsr => {
            let tmp0 = d - sa + sb;
            let p_sq = 2.0 + d_sq - 2.0 * c_ab + 2.0 * d * (sb - sa);
            if p_sq < 0.0 {
                return None;
            }
            let tmp1 = (ca - cb).atan2(tmp0);
            Some([mod2pi(alpha - tmp1), p_sq.sqrt(), mod2pi(tmp1 - beta)])
        }
        PathType::Lsr => {
            let p_sq = -2.0 + d_sq + 2.0 * c_ab + 2.0 * d * (sa + sb);
            if p_sq < 0.0 {
                return None;
            }
            let p = p_sq.sqrt();
            let tmp0 = (-ca - cb).atan2(d + sa + sb) - (-2.0f64).atan2(p);
            Some([mod2pi(tmp0 - alpha), p, mod2pi(tmp0 - mod2pi(beta))])
        }
        PathType::Rsl => {
            let p_sq = -2.0 + d_sq + 2.0 * c_ab - 2.0 * d * (sa + sb);
            if p_sq < 0.0 {
                return None;
            }
            let p = p_sq.sqrt();
            let tmp0 = (ca + cb).atan2(d - sa - sb) - 2.0f64.atan2(p);
            Some([mod2pi(alpha - tmp0), p, mod2pi(beta - tmp0)])
        }
        PathType::Rlr => {
            let tmp0 = (6.0 - d_sq + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0;
            if tmp0.abs() > 1.0 {
                return None;
            }
            let phi = (ca - cb).atan2(d - sa + sb);
            let p = mod2pi(TAU - tmp0.acos());
            let t = mod2pi(alpha - phi + mod2pi(p / 2.0));
            Some([t, p, mod2pi(alpha - beta - t + mod2pi(p))])
        }
        PathType::Lrl => {
            let tmp0 = (6.0 - d_sq + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0;
            if tmp0.abs() > 1.0 {
                return None;
            }
            let phi = (ca - cb).atan2(d + sa - sb);
            let p = mod2pi(TAU - tmp0.acos());
            let t = mod2pi(-alpha - phi + p / 2.0);
            Some([t, p, mod2pi(mod2pi(beta) - alpha - t + mod2pi(p))])
        }
    }
}

impl DubinsPath {
    /// The path of the given type between two poses, if it exists.
    pub fn with_type(start: Pose, goal: Pose, radius: f64, path_type: PathType) -> Option<Self> {
        assert!(radius > 0.0, "turning radius must be positive");
        let dx = goal.x - start.x;
        let dy = goal.y - start.y;
        let dist = dx.hypot(dy);
        let d = dist / radius;
        let theta = if dist > 0.0 { mod2pi(dy.atan2(dx)) } else { 0.0 };
        let alpha = mod2pi(start.theta - theta);
        let beta = mod2pi(goal.theta - theta);
        word(path_type, alpha, beta, d).map(|tpq| Self {
            start,
            radius,
            path_type,
            lengths: tpq.map(|v| v * radius),
        })
    }

    /// Shortest path over the six words; ties keep the earlier word in [`PathType::ALL`].
    pub fn shortest(start: Pose, goal: Pose, radius: f64) -> Option<Self> {
        PathType::ALL
            .iter()
            .filter_map(|&t| Self::with_type(start, goal, radius, t))
            .fold(None, |best: Option<Self>, p| match best {
                Some(b) if b.length() <= p.length() => Some(b),
                _ => Some(p),
            })
    }

    pub fn length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// Pose after travelling `s` meters along the path (clamped to its ends).
    pub fn pose_at(&self, s: f64) -> Pose {
        let mut pose = self.start;
        let mut remaining = s.clamp(0.0, self.length());
        for (seg, &len) in self.path_type.segments().iter().zip(&self.lengths) {
            let step = remaining.min(len);
            pose = advance(pose, *seg, step, self.radius);
            remaining -= step;
            if remaining <= 0.0 {
                break;
            }
        }
        pose
    }

    pub fn endpoint(&self) -> Pose {
        self.pose_at(self.length())
    }

    /// Positions at `count + 1` equally spaced arc lengths from start to end.
    pub fn sample_positions(&self, count: usize) -> Vec<(f64, f64)> {
        let total = self.length();
        let h = total / count as f64;
        let segments = self.path_type.segments();
        // segment start poses, so each sample is a single closed-form step
        let mut starts = [self.start; 3];
        let mut offsets = [0.0; 3];
        for i in 1..3 {
            starts[i] = advance(starts[i - 1], segments[i - 1], self.lengths[i - 1], self.radius);
            offsets[i] = offsets[i - 1] + self.lengths[i - 1];
        }
        (0..=count)
            .map(|k| {
                let s = if k == count { total } else { k as f64 * h };
                let i = (0..3).rev().find(|&i| s >= offsets[i]).unwrap_or(0);
                let p = advance(starts[i], segments[i], s - offsets[i], self.radius);
                (p.x, p.y)
            })
            .collect()
    }
}

pub(crate) fn advance(pose: Pose, segment: Segment, length: f64, radius: f64) -> Pose {
    let Pose { x, y, theta } = pose;
    match segment {
        Segment::Straight => Pose::new(x + length * theta.cos(), y + length * theta.sin(), theta),
        Segment::Left => {
            let phi = length / radius;
            Pose::new(
                x + radius * ((theta + phi).sin() - theta.sin()),
                y - radius * ((theta + phi).cos() - theta.cos()),
                theta + phi,
            )
        }
        Segment::Right => {
            let phi = length / radius;
            Pose::new(
                x - radius * ((theta - phi).sin() - theta.sin()),
                y + radius * ((theta - phi).cos() - theta.cos()),
                theta - phi,
            )
        }
    }
}
