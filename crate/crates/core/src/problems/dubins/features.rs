//! Trajectory features measured on an arc-length-uniform discretization.

use serde::{Deserialize, Serialize};

use super::path::DubinsPath;

/// Axis-aligned rectangle in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }

    pub fn centered(cx: f64, cy: f64, side: f64) -> Self {
        let h = side / 2.0;
        Self {
            xmin: cx - h,
            xmax: cx + h,
            ymin: cy - h,
            ymax: cy + h,
        }
    }
}

/// Every objective the Dubins problem can report, in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathMetrics {
    /// meters
    pub length: f64,
    /// integral of squared jerk, m²/s⁵
    pub is_jerk: f64,
    /// m/s³
    pub max_jerk: f64,
    /// meters of path inside the avoid region
    pub region_avoidance: f64,
}

/// Measures `path` driven at constant `speed`, sampled every `step` meters or less.
///
/// Jerk is the third finite difference of sampled positions divided by `Δt³`;
/// a path with fewer than four samples has zero jerk.
pub fn path_metrics(path: &DubinsPath, speed: f64, step: f64, region: Option<&Rect>) -> PathMetrics {
    let length = path.length();
    let count = (length / step).ceil() as usize;
    if count == 0 {
        return PathMetrics {
            length,
            is_jerk: 0.0,
            max_jerk: 0.0,
            region_avoidance: 0.0,
        };
    }
    let h = length / count as f64;
    let dt = h / speed;
    let pts = path.sample_positions(count);

    let dt3 = dt * dt * dt;
    let mut is_jerk = 0.0;
    let mut max_jerk: f64 = 0.0;
    for w in pts.windows(4) {
        let jx = (w[3].0 - 3.0 * w[2].0 + 3.0 * w[1].0 - w[0].0) / dt3;
        let jy = (w[3].1 - 3.0 * w[2].1 + 3.0 * w[1].1 - w[0].1) / dt3;
        let sq = jx * jx + jy * jy;
        is_jerk += sq * dt;
        max_jerk = max_jerk.max(sq.sqrt());
    }

    let region_avoidance = region.map_or(0.0, |r| {
        pts.windows(2)
            .filter(|w| r.contains((w[0].0 + w[1].0) / 2.0, (w[0].1 + w[1].1) / 2.0))
            .count() as f64
            * h
    });

    PathMetrics {
        length,
        is_jerk,
        max_jerk,
        region_avoidance,
    }
}
