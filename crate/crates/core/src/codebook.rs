//! Feature codebooks: the learnable scene representations.
//!
//! Three variants share one query contract (`point in [-1,1]^3 -> C features`):
//!
//! * [`VoxelGrid`] — dense `N^3 x C` grid, trilinear interpolation.
//! * [`TriPlane`] — three axis-aligned planes, bilinear per plane, summed.
//! * [`PlaneGroupSet`] — three *groups* of `K` parallel planes stacked along
//!   x, y and z. In-plane lookups are bilinear; along the stacking axis the
//!   two bracketing planes are linearly blended, with constant extrapolation
//!   outside the anchor span. `K = 1` degenerates to a tri-plane.
//!
//! Texels use an align-corners grid: texel `i` of an `N`-wide axis sits at
//! `-1 + 2i/(N-1)`. Queries clamp the point to the domain box first, so the
//! positional derivative is zero in any clamped coordinate.

use nalgebra::Vector3;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// The scene lives in this axis-aligned box.
pub const DOMAIN_MIN: f64 = -1.0;
pub const DOMAIN_MAX: f64 = 1.0;

/// Octave count used by [`frequency_encode`] when callers have no opinion.
pub const DEFAULT_FREQ_OCTAVES: usize = 4;

/// Evenly spaced location embedding for plane `index` of `count`:
/// `-1 + 2*index/count`. Spacing is `2/count`, so the last plane sits at
/// `1 - 2/count`, not at `+1`; constant extrapolation covers the gap.
pub fn linear_location_embedding(index: usize, count: usize) -> f64 {
    assert!(count >= 1, "plane count must be >= 1");
    assert!(index < count, "plane index {index} out of range for {count}");
    -1.0 + 2.0 * index as f64 / count as f64
}

/// Sin/cos frequency features of a scalar location embedding, ordered as
/// `[sin(2^0 pi l), cos(2^0 pi l), sin(2^1 pi l), cos(2^1 pi l), ...]`.
pub fn frequency_encode(l: f64, octaves: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * octaves);
    for j in 0..octaves {
        let arg = std::f64::consts::PI * l * (1u64 << j) as f64;
        out.push(arg.sin());
        out.push(arg.cos());
    }
    out
}

fn check_point(p: &Vector3<f64>) -> Result<()> {
    if p.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::invalid(format!("non-finite query point {p:?}")))
    }
}

fn check_out_len(len: usize, channels: usize) -> Result<()> {
    if len == channels {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "output buffer has {len} channels, representation has {channels}"
        )))
    }
}

fn check_dims(resolution: usize, channels: usize) -> Result<()> {
    if resolution < 2 {
        return Err(Error::invalid(format!(
            "resolution {resolution} too small; interpolation needs >= 2 texels per axis"
        )));
    }
    if channels == 0 {
        return Err(Error::invalid("channel count must be >= 1"));
    }
    Ok(())
}

/// One interpolation axis: lower texel, fractional offset, and the derivative
/// of that fraction w.r.t. the (unclamped) input coordinate.
#[derive(Debug, Clone, Copy)]
struct AxisLerp {
    i0: usize,
    frac: f64,
    dfrac: f64,
}

fn axis_lerp(x: f64, n: usize) -> AxisLerp {
    let clamped = x.clamp(DOMAIN_MIN, DOMAIN_MAX);
    let t = (clamped - DOMAIN_MIN) * 0.5 * (n - 1) as f64;
    let i0 = (t.floor() as usize).min(n - 2);
    let dfrac = if x > DOMAIN_MIN && x < DOMAIN_MAX {
        0.5 * (n - 1) as f64
    } else {
        0.0 // clamped: the lookup no longer moves with the input
    };
    AxisLerp {
        i0,
        frac: t - i0 as f64,
        dfrac,
    }
}

/// Bracketing planes along a stacking axis: indices, blend weight toward the
/// upper plane, and `d(blend)/d(coord)`. Outside the anchor span both indices
/// collapse onto the nearest plane and the derivative vanishes.
fn bracket_anchors(anchors: &[f64], w: f64) -> (usize, usize, f64, f64) {
    let last = anchors.len() - 1;
    if w <= anchors[0] {
        return (0, 0, 0.0, 0.0);
    }
    if w >= anchors[last] {
        return (last, last, 0.0, 0.0);
    }
    // K is small; a linear scan beats binary search and is branch-predictable.
    let mut lo = 0;
    while w >= anchors[lo + 1] {
        lo += 1;
    }
    let gap = anchors[lo + 1] - anchors[lo];
    ((lo), (lo + 1), (w - anchors[lo]) / gap, 1.0 / gap)
}

fn validate_anchors(anchors: &[f64], count: usize) -> Result<()> {
    if anchors.len() != count {
        return Err(Error::invalid(format!(
            "expected {count} anchors, got {}",
            anchors.len()
        )));
    }
    for pair in anchors.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::invalid("anchors must be strictly increasing"));
        }
    }
    if anchors[0] < DOMAIN_MIN || anchors[count - 1] > DOMAIN_MAX {
        return Err(Error::invalid("anchors must lie inside the domain box"));
    }
    Ok(())
}

fn fill_normal(data: &mut [f64], std: f64, rng: &mut impl Rng) {
    let normal = Normal::new(0.0, std).expect("std must be finite and positive");
    for v in data.iter_mut() {
        *v = normal.sample(rng);
    }
}

// Gather helpers shared by the plane-based variants. `base` points at texel
// (0, 0) channel 0 of one plane; rows advance along the first in-plane axis.

fn bilinear_accumulate(
    data: &[f64],
    base: usize,
    n: usize,
    c: usize,
    au: AxisLerp,
    av: AxisLerp,
    scale: f64,
    out: &mut [f64],
) {
    let (fu, fv) = (au.frac, av.frac);
    let corner = |du: usize, dv: usize| base + ((au.i0 + du) * n + av.i0 + dv) * c;
    let w00 = scale * (1.0 - fu) * (1.0 - fv);
    let w01 = scale * (1.0 - fu) * fv;
    let w10 = scale * fu * (1.0 - fv);
    let w11 = scale * fu * fv;
    let (c00, c01, c10, c11) = (corner(0, 0), corner(0, 1), corner(1, 0), corner(1, 1));
    for ch in 0..c {
        out[ch] += w00 * data[c00 + ch]
            + w01 * data[c01 + ch]
            + w10 * data[c10 + ch]
            + w11 * data[c11 + ch];
    }
}

/// Backward of one bilinear plane lookup. Scatters feature gradients and
/// returns `(dL/dfrac_u, dL/dfrac_v, dot(grad_out, bilinear value))`; the
/// last term feeds the stacking-axis derivative.
fn bilinear_backward(
    data: &[f64],
    base: usize,
    n: usize,
    c: usize,
    au: AxisLerp,
    av: AxisLerp,
    scale: f64,
    grad_out: &[f64],
    grad_data: &mut [f64],
) -> (f64, f64, f64) {
    let (fu, fv) = (au.frac, av.frac);
    let corner = |du: usize, dv: usize| base + ((au.i0 + du) * n + av.i0 + dv) * c;
    let (c00, c01, c10, c11) = (corner(0, 0), corner(0, 1), corner(1, 0), corner(1, 1));
    let w00 = (1.0 - fu) * (1.0 - fv);
    let w01 = (1.0 - fu) * fv;
    let w10 = fu * (1.0 - fv);
    let w11 = fu * fv;
    // Dots of grad_out with each corner's feature vector.
    let (mut g00, mut g01, mut g10, mut g11) = (0.0, 0.0, 0.0, 0.0);
    for ch in 0..c {
        let g = grad_out[ch];
        g00 += g * data[c00 + ch];
        g01 += g * data[c01 + ch];
        g10 += g * data[c10 + ch];
        g11 += g * data[c11 + ch];
        grad_data[c00 + ch] += scale * w00 * g;
        grad_data[c01 + ch] += scale * w01 * g;
        grad_data[c10 + ch] += scale * w10 * g;
        grad_data[c11 + ch] += scale * w11 * g;
    }
    let dfu = scale * ((1.0 - fv) * (g10 - g00) + fv * (g11 - g01));
    let dfv = scale * ((1.0 - fu) * (g01 - g00) + fu * (g11 - g10));
    let value_dot = w00 * g00 + w01 * g01 + w10 * g10 + w11 * g11;
    (dfu, dfv, value_dot)
}

/// Dense voxel grid, `N^3` texels with `C` channels each. Layout is x-major
/// (x, then y, then z), channels innermost.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelGrid {
    resolution: usize,
    channels: usize,
    data: Vec<f64>,
}

impl VoxelGrid {
    pub fn new(resolution: usize, channels: usize) -> Result<Self> {
        check_dims(resolution, channels)?;
        Ok(Self {
            resolution,
            channels,
            data: vec![0.0; resolution * resolution * resolution * channels],
        })
    }

    pub fn new_random(
        resolution: usize,
        channels: usize,
        std: f64,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let mut grid = Self::new(resolution, channels)?;
        fill_normal(&mut grid.data, std, rng);
        Ok(grid)
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn param_count(&self) -> usize {
        self.data.len()
    }

    pub fn features(&self) -> &[f64] {
        &self.data
    }

    pub fn features_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn texel_index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ((ix * self.resolution + iy) * self.resolution + iz) * self.channels
    }

    pub fn query_into(&self, p: Vector3<f64>, out: &mut [f64]) -> Result<()> {
        check_point(&p)?;
        check_out_len(out.len(), self.channels)?;
        let n = self.resolution;
        let ax = axis_lerp(p.x, n);
        let ay = axis_lerp(p.y, n);
        let az = axis_lerp(p.z, n);
        out.fill(0.0);
        for (dx, wx) in [(0, 1.0 - ax.frac), (1, ax.frac)] {
            for (dy, wy) in [(0, 1.0 - ay.frac), (1, ay.frac)] {
                let base = self.texel_index(ax.i0 + dx, ay.i0 + dy, az.i0);
                let scale = wx * wy;
                for ch in 0..self.channels {
                    out[ch] += scale
                        * ((1.0 - az.frac) * self.data[base + ch]
                            + az.frac * self.data[base + self.channels + ch]);
                }
            }
        }
        Ok(())
    }

    /// Scatter `dL/dout` into `grad_features` (accumulating) and return
    /// `dL/dpoint`.
    pub fn backprop_query(
        &self,
        p: Vector3<f64>,
        grad_out: &[f64],
        grad_features: &mut [f64],
    ) -> Result<Vector3<f64>> {
        check_point(&p)?;
        check_out_len(grad_out.len(), self.channels)?;
        if grad_features.len() != self.data.len() {
            return Err(Error::invalid("gradient buffer size mismatch"));
        }
        let n = self.resolution;
        let ax = axis_lerp(p.x, n);
        let ay = axis_lerp(p.y, n);
        let az = axis_lerp(p.z, n);
        // Dots of grad_out with the 8 corner features.
        let mut dots = [[[0.0f64; 2]; 2]; 2];
        for dx in 0..2 {
            for dy in 0..2 {
                for dz in 0..2 {
                    let base = self.texel_index(ax.i0 + dx, ay.i0 + dy, az.i0 + dz);
                    let mut dot = 0.0;
                    let wx = if dx == 0 { 1.0 - ax.frac } else { ax.frac };
                    let wy = if dy == 0 { 1.0 - ay.frac } else { ay.frac };
                    let wz = if dz == 0 { 1.0 - az.frac } else { az.frac };
                    let w = wx * wy * wz;
                    for ch in 0..self.channels {
                        dot += grad_out[ch] * self.data[base + ch];
                        grad_features[base + ch] += w * grad_out[ch];
                    }
                    dots[dx][dy][dz] = dot;
                }
            }
        }
        let lerp2 = |a: [[f64; 2]; 2], fu: f64, fv: f64| {
            (1.0 - fu) * ((1.0 - fv) * a[0][0] + fv * a[0][1])
                + fu * ((1.0 - fv) * a[1][0] + fv * a[1][1])
        };
        let dx = lerp2(
            [[dots[1][0][0] - dots[0][0][0], dots[1][0][1] - dots[0][0][1]], [
                dots[1][1][0] - dots[0][1][0],
                dots[1][1][1] - dots[0][1][1],
            ]],
            ay.frac,
            az.frac,
        ) * ax.dfrac;
        let dy = lerp2(
            [[dots[0][1][0] - dots[0][0][0], dots[0][1][1] - dots[0][0][1]], [
                dots[1][1][0] - dots[1][0][0],
                dots[1][1][1] - dots[1][0][1],
            ]],
            ax.frac,
            az.frac,
        ) * ay.dfrac;
        let dz = lerp2(
            [[dots[0][0][1] - dots[0][0][0], dots[0][1][1] - dots[0][1][0]], [
                dots[1][0][1] - dots[1][0][0],
                dots[1][1][1] - dots[1][1][0],
            ]],
            ax.frac,
            ay.frac,
        ) * az.dfrac;
        Ok(Vector3::new(dx, dy, dz))
    }
}

/// Classic three-plane factorization: planes span (y,z), (z,x) and (x,y);
/// the query point projects onto each, bilinear results are summed.
#[derive(Debug, Clone, PartialEq)]
pub struct TriPlane {
    resolution: usize,
    channels: usize,
    data: Vec<f64>, // [plane][row][col][channel]
}

impl TriPlane {
    pub fn new(resolution: usize, channels: usize) -> Result<Self> {
        check_dims(resolution, channels)?;
        Ok(Self {
            resolution,
            channels,
            data: vec![0.0; 3 * resolution * resolution * channels],
        })
    }

    pub fn new_random(
        resolution: usize,
        channels: usize,
        std: f64,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let mut planes = Self::new(resolution, channels)?;
        fill_normal(&mut planes.data, std, rng);
        Ok(planes)
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn param_count(&self) -> usize {
        self.data.len()
    }

    pub fn features(&self) -> &[f64] {
        &self.data
    }

    pub fn features_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Flat index of texel (0,0) channel 0 of plane `g`. Plane `g` drops axis
    /// `g`; its rows advance along axis `(g+1)%3`, columns along `(g+2)%3`.
    #[inline]
    pub fn plane_base(&self, g: usize) -> usize {
        g * self.resolution * self.resolution * self.channels
    }

    pub fn query_into(&self, p: Vector3<f64>, out: &mut [f64]) -> Result<()> {
        check_point(&p)?;
        check_out_len(out.len(), self.channels)?;
        out.fill(0.0);
        let n = self.resolution;
        for g in 0..3 {
            let au = axis_lerp(p[(g + 1) % 3], n);
            let av = axis_lerp(p[(g + 2) % 3], n);
            bilinear_accumulate(
                &self.data,
                self.plane_base(g),
                n,
                self.channels,
                au,
                av,
                1.0,
                out,
            );
        }
        Ok(())
    }

    pub fn backprop_query(
        &self,
        p: Vector3<f64>,
        grad_out: &[f64],
        grad_features: &mut [f64],
    ) -> Result<Vector3<f64>> {
        check_point(&p)?;
        check_out_len(grad_out.len(), self.channels)?;
        if grad_features.len() != self.data.len() {
            return Err(Error::invalid("gradient buffer size mismatch"));
        }
        let n = self.resolution;
        let mut grad_p = Vector3::zeros();
        for g in 0..3 {
            let (ua, va) = ((g + 1) % 3, (g + 2) % 3);
            let au = axis_lerp(p[ua], n);
            let av = axis_lerp(p[va], n);
            let (dfu, dfv, _) = bilinear_backward(
                &self.data,
                self.plane_base(g),
                n,
                self.channels,
                au,
                av,
                1.0,
                grad_out,
                grad_features,
            );
            grad_p[ua] += dfu * au.dfrac;
            grad_p[va] += dfv * av.dfrac;
        }
        Ok(grad_p)
    }
}

/// Three groups of `K` parallel feature planes. Group `g` stacks along axis
/// `g` at the per-group `anchors`; in-plane axes follow the same cyclic
/// convention as [`TriPlane`]. A query bilinearly samples the two planes
/// bracketing the point in each group, blends them linearly along the
/// stacking axis (constant beyond the outermost anchors) and sums the three
/// group results.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneGroupSet {
    planes_per_group: usize,
    resolution: usize,
    channels: usize,
    anchors: [Vec<f64>; 3],
    data: Vec<f64>, // [group][plane][row][col][channel]
}

impl PlaneGroupSet {
    /// Anchors at the evenly spaced location embeddings.
    pub fn new(planes_per_group: usize, resolution: usize, channels: usize) -> Result<Self> {
        let anchors: Vec<f64> = (0..planes_per_group)
            .map(|k| linear_location_embedding(k, planes_per_group))
            .collect();
        Self::with_anchors(
            planes_per_group,
            resolution,
            channels,
            [anchors.clone(), anchors.clone(), anchors],
        )
    }

    pub fn with_anchors(
        planes_per_group: usize,
        resolution: usize,
        channels: usize,
        anchors: [Vec<f64>; 3],
    ) -> Result<Self> {
        check_dims(resolution, channels)?;
        if planes_per_group == 0 {
            return Err(Error::invalid("plane count per group must be >= 1"));
        }
        for group in &anchors {
            validate_anchors(group, planes_per_group)?;
        }
        Ok(Self {
            planes_per_group,
            resolution,
            channels,
            anchors,
            data: vec![0.0; 3 * planes_per_group * resolution * resolution * channels],
        })
    }

    pub fn new_random(
        planes_per_group: usize,
        resolution: usize,
        channels: usize,
        std: f64,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let mut set = Self::new(planes_per_group, resolution, channels)?;
        fill_normal(&mut set.data, std, rng);
        Ok(set)
    }

    pub fn planes_per_group(&self) -> usize {
        self.planes_per_group
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn anchors(&self) -> &[Vec<f64>; 3] {
        &self.anchors
    }

    pub fn param_count(&self) -> usize {
        self.data.len()
    }

    pub fn features(&self) -> &[f64] {
        &self.data
    }

    pub fn features_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Flat index of texel (0,0) channel 0 of plane `k` in group `g`.
    #[inline]
    pub fn plane_base(&self, g: usize, k: usize) -> usize {
        ((g * self.planes_per_group + k) * self.resolution * self.resolution) * self.channels
    }

    pub fn query_into(&self, p: Vector3<f64>, out: &mut [f64]) -> Result<()> {
        check_point(&p)?;
        check_out_len(out.len(), self.channels)?;
        out.fill(0.0);
        let n = self.resolution;
        for g in 0..3 {
            let au = axis_lerp(p[(g + 1) % 3], n);
            let av = axis_lerp(p[(g + 2) % 3], n);
            let w = p[g].clamp(DOMAIN_MIN, DOMAIN_MAX);
            let (lo, hi, s, _) = bracket_anchors(&self.anchors[g], w);
            bilinear_accumulate(
                &self.data,
                self.plane_base(g, lo),
                n,
                self.channels,
                au,
                av,
                1.0 - s,
                out,
            );
            if s != 0.0 {
                bilinear_accumulate(
                    &self.data,
                    self.plane_base(g, hi),
                    n,
                    self.channels,
                    au,
                    av,
                    s,
                    out,
                );
            }
        }
        Ok(())
    }

    pub fn backprop_query(
        &self,
        p: Vector3<f64>,
        grad_out: &[f64],
        grad_features: &mut [f64],
    ) -> Result<Vector3<f64>> {
        check_point(&p)?;
        check_out_len(grad_out.len(), self.channels)?;
        if grad_features.len() != self.data.len() {
            return Err(Error::invalid("gradient buffer size mismatch"));
        }
        let n = self.resolution;
        let mut grad_p = Vector3::zeros();
        for g in 0..3 {
            let (ua, va) = ((g + 1) % 3, (g + 2) % 3);
            let au = axis_lerp(p[ua], n);
            let av = axis_lerp(p[va], n);
            let w = p[g].clamp(DOMAIN_MIN, DOMAIN_MAX);
            let (lo, hi, s, ds) = bracket_anchors(&self.anchors[g], w);
            let (dfu_lo, dfv_lo, dot_lo) = bilinear_backward(
                &self.data,
                self.plane_base(g, lo),
                n,
                self.channels,
                au,
                av,
                1.0 - s,
                grad_out,
                grad_features,
            );
            let (mut dfu, mut dfv) = (dfu_lo, dfv_lo);
            if hi != lo {
                let (dfu_hi, dfv_hi, dot_hi) = bilinear_backward(
                    &self.data,
                    self.plane_base(g, hi),
                    n,
                    self.channels,
                    au,
                    av,
                    s,
                    grad_out,
                    grad_features,
                );
                dfu += dfu_hi;
                dfv += dfv_hi;
                grad_p[g] += ds * (dot_hi - dot_lo);
            }
            grad_p[ua] += dfu * au.dfrac;
            grad_p[va] += dfv * av.dfrac;
        }
        Ok(grad_p)
    }
}

/// Unified handle over the three codebook variants so the rendering and
/// training paths stay generic.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    Voxel(VoxelGrid),
    TriPlane(TriPlane),
    OrthoPlanes(PlaneGroupSet),
}

impl Representation {
    pub fn channels(&self) -> usize {
        match self {
            Representation::Voxel(g) => g.channels(),
            Representation::TriPlane(t) => t.channels(),
            Representation::OrthoPlanes(s) => s.channels(),
        }
    }

    pub fn param_count(&self) -> usize {
        match self {
            Representation::Voxel(g) => g.param_count(),
            Representation::TriPlane(t) => t.param_count(),
            Representation::OrthoPlanes(s) => s.param_count(),
        }
    }

    /// Checkpoint weight in bytes: parameters are serialized as f32.
    pub fn feature_bytes(&self) -> usize {
        self.param_count() * std::mem::size_of::<f32>()
    }

    pub fn features(&self) -> &[f64] {
        match self {
            Representation::Voxel(g) => g.features(),
            Representation::TriPlane(t) => t.features(),
            Representation::OrthoPlanes(s) => s.features(),
        }
    }

    pub fn features_mut(&mut self) -> &mut [f64] {
        match self {
            Representation::Voxel(g) => g.features_mut(),
            Representation::TriPlane(t) => t.features_mut(),
            Representation::OrthoPlanes(s) => s.features_mut(),
        }
    }

    pub fn query_into(&self, p: Vector3<f64>, out: &mut [f64]) -> Result<()> {
        match self {
            Representation::Voxel(g) => g.query_into(p, out),
            Representation::TriPlane(t) => t.query_into(p, out),
            Representation::OrthoPlanes(s) => s.query_into(p, out),
        }
    }

    pub fn backprop_query(
        &self,
        p: Vector3<f64>,
        grad_out: &[f64],
        grad_features: &mut [f64],
    ) -> Result<Vector3<f64>> {
        match self {
            Representation::Voxel(g) => g.backprop_query(p, grad_out, grad_features),
            Representation::TriPlane(t) => t.backprop_query(p, grad_out, grad_features),
            Representation::OrthoPlanes(s) => s.backprop_query(p, grad_out, grad_features),
        }
    }
}
