//! Planar incidence on a toroidal raster: bit grids over `[0,1]²`,
//! directional translation disagreement, distance-transform neighborhoods
//! of the complement and the boundary, and log-log dimension estimates.
//!
//! All distances are Euclidean between cell centers on the torus; the
//! squared distance transform is exact (integer-valued in cell units), so
//! thresholding a field at different radii is consistent and every mask
//! predicate is deterministic.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::bounds::scaling_exponent;
use crate::constructions::{fat_cantor_complement, FatCantorSpec};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, to_f64, Rational};

/// Bit grid over the unit torus: cell `(x, y)` covers
/// `[x/res, (x+1)/res) × [y/res, (y+1)/res)` and is tested at its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterSet {
    resolution: usize,
    cells: Vec<bool>,
}

fn check_resolution(res: usize) -> Result<()> {
    if res < 16 || !res.is_power_of_two() {
        return Err(Error::range(
            "resolution",
            format!("{res} is not a power of two >= 16"),
        ));
    }
    Ok(())
}

/// Marks every cell whose center satisfies the predicate.
pub fn rasterize(pred: impl Fn(f64, f64) -> bool, resolution: usize) -> Result<RasterSet> {
    check_resolution(resolution)?;
    let mut cells = vec![false; resolution * resolution];
    for y in 0..resolution {
        let cy = (y as f64 + 0.5) / resolution as f64;
        for x in 0..resolution {
            let cx = (x as f64 + 0.5) / resolution as f64;
            cells[y * resolution + x] = pred(cx, cy);
        }
    }
    Ok(RasterSet { resolution, cells })
}

impl RasterSet {
    pub fn from_cells(resolution: usize, cells: Vec<bool>) -> Result<RasterSet> {
        check_resolution(resolution)?;
        if cells.len() != resolution * resolution {
            return Err(Error::range(
                "cell buffer",
                format!("{} cells for resolution {resolution}", cells.len()),
            ));
        }
        Ok(RasterSet { resolution, cells })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn cell_area(&self) -> f64 {
        1.0 / (self.resolution * self.resolution) as f64
    }

    pub fn area(&self) -> f64 {
        self.cells.iter().filter(|&&c| c).count() as f64 * self.cell_area()
    }

    pub fn mask_measure(&self, mask: &[bool]) -> f64 {
        mask.iter().filter(|&&c| c).count() as f64 * self.cell_area()
    }

    /// Toroidal translation by whole cells.
    pub fn translate_cells(&self, dx: isize, dy: isize) -> RasterSet {
        let r = self.resolution as isize;
        let mut cells = vec![false; self.cells.len()];
        for y in 0..r {
            for x in 0..r {
                let sx = (x - dx).rem_euclid(r) as usize;
                let sy = (y - dy).rem_euclid(r) as usize;
                cells[(y * r + x) as usize] = self.cells[sy * self.resolution + sx];
            }
        }
        RasterSet { resolution: self.resolution, cells }
    }

    fn shift_of(&self, h: f64, v: (f64, f64)) -> (isize, isize) {
        let norm = (v.0 * v.0 + v.1 * v.1).sqrt();
        if norm == 0.0 {
            return (0, 0);
        }
        let scale = h * self.resolution as f64 / norm;
        ((v.0 * scale).round() as isize, (v.1 * scale).round() as isize)
    }

    /// Measure of `{x : χ_E(x + h v) != χ_E(x)}` under the nearest-cell
    /// shift `round(h · res · v)`, toroidally. Grid-aligned translations
    /// of the set leave this invariant.
    pub fn tau_directional(&self, h: f64, v: (f64, f64)) -> f64 {
        let (dx, dy) = self.shift_of(h, v);
        let r = self.resolution as isize;
        let mut count = 0usize;
        for y in 0..r {
            for x in 0..r {
                let sx = (x + dx).rem_euclid(r) as usize;
                let sy = (y + dy).rem_euclid(r) as usize;
                if self.cells[(y * r + x) as usize] != self.cells[sy * self.resolution + sx] {
                    count += 1;
                }
            }
        }
        count as f64 * self.cell_area()
    }

    /// Cells of `E` whose forward or backward shifted center lands in the
    /// complement: the side of the disagreement set that sits inside `E`
    /// and is therefore within `h` (plus one cell of rounding) of the
    /// complement.
    pub fn eside_disagreement_mask(&self, h: f64, v: (f64, f64)) -> Vec<bool> {
        let (dx, dy) = self.shift_of(h, v);
        let r = self.resolution as isize;
        let mut mask = vec![false; self.cells.len()];
        for y in 0..r {
            for x in 0..r {
                if !self.cells[(y * r + x) as usize] {
                    continue;
                }
                let fwd = ((x + dx).rem_euclid(r), (y + dy).rem_euclid(r));
                let bwd = ((x - dx).rem_euclid(r), (y - dy).rem_euclid(r));
                let hit = |(cx, cy): (isize, isize)| {
                    !self.cells[cy as usize * self.resolution + cx as usize]
                };
                if hit(fwd) || hit(bwd) {
                    mask[(y * r + x) as usize] = true;
                }
            }
        }
        mask
    }

    /// Interface cells: cells differing from one of their 8 toroidal
    /// neighbors, taken on both sides of the jump.
    pub fn interface_mask(&self) -> Vec<bool> {
        let r = self.resolution as isize;
        let mut mask = vec![false; self.cells.len()];
        for y in 0..r {
            for x in 0..r {
                let c = self.cells[(y * r + x) as usize];
                'probe: for ny in -1..=1isize {
                    for nx in -1..=1isize {
                        if nx == 0 && ny == 0 {
                            continue;
                        }
                        let px = (x + nx).rem_euclid(r) as usize;
                        let py = (y + ny).rem_euclid(r) as usize;
                        if self.cells[py * self.resolution + px] != c {
                            mask[(y * r + x) as usize] = true;
                            break 'probe;
                        }
                    }
                }
            }
        }
        mask
    }

    /// Distance field seeded on the complement cells.
    pub fn distance_to_complement(&self) -> DistanceField {
        let seeds: Vec<bool> = self.cells.iter().map(|&c| !c).collect();
        DistanceField::from_seeds(&seeds, self.resolution)
    }

    /// Distance field seeded on the interface cells.
    pub fn distance_to_interface(&self) -> DistanceField {
        DistanceField::from_seeds(&self.interface_mask(), self.resolution)
    }

    /// Cells of `E` at distance `<= h` from the complement — the grid
    /// reading of `K(h) \ K`.
    pub fn deficit_mask(&self, field: &DistanceField, h: f64) -> Vec<bool> {
        let within = field.within(h);
        self.cells
            .iter()
            .zip(within)
            .map(|(&in_e, near)| in_e && near)
            .collect()
    }

    /// Measures `(|K(h)\K|, |Γ(h)|)` at offset `h >= 0`. At `h = 0` both
    /// vanish: the boundary of an open set is null in the continuum, so
    /// the zero-offset neighborhoods are reported with measure zero even
    /// though the interface occupies whole cells on the grid.
    pub fn neighborhood_measures(&self, h: f64) -> Result<(f64, f64)> {
        if h < 0.0 {
            return Err(Error::range("offset", format!("h = {h} negative")));
        }
        if h == 0.0 {
            return Ok((0.0, 0.0));
        }
        let deficit = self.deficit_mask(&self.distance_to_complement(), h);
        let gamma = self.distance_to_interface().within(h);
        Ok((self.mask_measure(&deficit), self.mask_measure(&gamma)))
    }

    /// Log-log slope estimates of the complement-collar and boundary-
    /// neighborhood scalings: `d_X = 2 - slope |K(h)\K|`,
    /// `d_B = 2 - slope |Γ(h)|`, with least-squares fit quality attached
    /// instead of assuming the limits exist.
    pub fn dimension_estimates(&self, hs: &[f64]) -> Result<DimensionEstimates> {
        if hs.len() < 4 {
            return Err(Error::range("offset list", format!("{} values, need >= 4", hs.len())));
        }
        let floor = 2.0 / self.resolution as f64;
        if let Some(bad) = hs.iter().find(|&&h| h < floor) {
            return Err(Error::range(
                "offset list",
                format!("h = {bad} below grid scale {floor}"),
            ));
        }
        let complement = self.distance_to_complement();
        let interface = self.distance_to_interface();
        let mut deficit_samples = Vec::with_capacity(hs.len());
        let mut gamma_samples = Vec::with_capacity(hs.len());
        for &h in hs {
            let deficit = self.mask_measure(&self.deficit_mask(&complement, h));
            let gamma = self.mask_measure(&interface.within(h));
            if deficit <= 0.0 || gamma <= 0.0 {
                return Err(Error::Degenerate(format!(
                    "empty neighborhood at h = {h}; no scaling to fit"
                )));
            }
            deficit_samples.push((h, deficit));
            gamma_samples.push((h, gamma));
        }
        let (slope_x, fit_x) = scaling_exponent(&deficit_samples)?;
        let (slope_b, fit_b) = scaling_exponent(&gamma_samples)?;
        Ok(DimensionEstimates {
            d_x: 2.0 - slope_x,
            d_b: 2.0 - slope_b,
            fit_x,
            fit_b,
        })
    }

    /// Writes the grid as a binary PGM (P5, maxval 1, one byte per cell)
    /// plus a JSON sidecar `<path>.json` recording the resolution.
    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        let mut data = format!("P5\n{} {}\n1\n", self.resolution, self.resolution).into_bytes();
        data.extend(self.cells.iter().map(|&c| u8::from(c)));
        std::fs::write(path, data)?;
        let mut sidecar = String::new();
        let _ = write!(sidecar, "{{\"resolution\": {}}}", self.resolution);
        std::fs::write(sidecar_path(path), sidecar)?;
        Ok(())
    }

    /// Reads a grid written by [`write_pgm`](Self::write_pgm); if the
    /// sidecar is present its resolution must agree with the header.
    pub fn read_pgm(path: &Path) -> Result<RasterSet> {
        let data = std::fs::read(path)?;
        let (header, rest) = split_header(&data)?;
        let mut tokens = header.split_ascii_whitespace();
        if tokens.next() != Some("P5") {
            return Err(Error::Format("expected P5 magic".into()));
        }
        let mut field = |name: &str| -> Result<usize> {
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Format(format!("bad or missing {name}")))
        };
        let width = field("width")?;
        let height = field("height")?;
        let maxval = field("maxval")?;
        if width != height {
            return Err(Error::Format(format!("grid must be square, got {width}x{height}")));
        }
        if maxval != 1 {
            return Err(Error::Format(format!("maxval must be 1, got {maxval}")));
        }
        if rest.len() != width * height {
            return Err(Error::Format(format!(
                "payload holds {} bytes, header promises {}",
                rest.len(),
                width * height
            )));
        }
        if let Ok(sidecar) = std::fs::read_to_string(sidecar_path(path)) {
            let recorded = sidecar
                .split(|c: char| !c.is_ascii_digit())
                .find(|t| !t.is_empty())
                .and_then(|t| t.parse::<usize>().ok());
            if recorded != Some(width) {
                return Err(Error::Format(format!(
                    "sidecar resolution {recorded:?} disagrees with header {width}"
                )));
            }
        }
        RasterSet::from_cells(width, rest.iter().map(|&b| b != 0).collect())
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    std::path::PathBuf::from(s)
}

fn split_header(data: &[u8]) -> Result<(&str, &[u8])> {
    // header = three whitespace-separated fields after the magic, then one
    // whitespace byte before the payload
    let mut fields = 0;
    let mut in_field = false;
    for (i, &b) in data.iter().enumerate() {
        let ws = b.is_ascii_whitespace();
        if !ws && !in_field {
            in_field = true;
        } else if ws && in_field {
            in_field = false;
            fields += 1;
            if fields == 4 {
                let header = std::str::from_utf8(&data[..i])
                    .map_err(|_| Error::Format("non-ascii header".into()))?;
                return Ok((header, &data[i + 1..]));
            }
        }
    }
    Err(Error::Format("truncated header".into()))
}

/// Fit report from [`RasterSet::dimension_estimates`]: dimension readings
/// with their `r²` qualities.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DimensionEstimates {
    pub d_x: f64,
    pub d_b: f64,
    pub fit_x: f64,
    pub fit_b: f64,
}

/// Exact toroidal squared Euclidean distance (cell units, cell centers)
/// from every cell to a seed set. The transform is separable on the
/// torus, so each one-dimensional parabola pass runs on the line tripled
/// end to end and keeps its middle copy: every seed is seen at offsets
/// `{-res, 0, +res}`, which covers the wrap representative exactly. All
/// finite outputs are exact integers in squared cell units.
#[derive(Debug, Clone)]
pub struct DistanceField {
    resolution: usize,
    d2: Vec<f64>,
}

impl DistanceField {
    pub fn from_seeds(seeds: &[bool], resolution: usize) -> DistanceField {
        assert_eq!(seeds.len(), resolution * resolution, "seed buffer size");
        let r = resolution;
        const FAR: f64 = 1e18;
        let mut grid: Vec<f64> = seeds.iter().map(|&s| if s { 0.0 } else { FAR }).collect();
        let mut f = vec![0.0f64; 3 * r];
        let mut d = vec![0.0f64; 3 * r];
        let mut v = vec![0usize; 3 * r];
        let mut z = vec![0.0f64; 3 * r + 1];
        for y in 0..r {
            for k in 0..3 {
                f[k * r..(k + 1) * r].copy_from_slice(&grid[y * r..(y + 1) * r]);
            }
            parabola_pass(&f, &mut d, &mut v, &mut z);
            grid[y * r..(y + 1) * r].copy_from_slice(&d[r..2 * r]);
        }
        for x in 0..r {
            for y in 0..r {
                let val = grid[y * r + x];
                f[y] = val;
                f[y + r] = val;
                f[y + 2 * r] = val;
            }
            parabola_pass(&f, &mut d, &mut v, &mut z);
            for y in 0..r {
                grid[y * r + x] = d[r + y];
            }
        }
        DistanceField { resolution: r, d2: grid }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Squared distance in cell units for cell `(x, y)`.
    pub fn squared(&self, x: usize, y: usize) -> f64 {
        self.d2[y * self.resolution + x]
    }

    /// Mask of cells within unit-coordinate distance `h` of the seeds.
    pub fn within(&self, h: f64) -> Vec<bool> {
        let cap = (h * self.resolution as f64).powi(2);
        self.d2.iter().map(|&d2| d2 <= cap).collect()
    }
}

/// One-dimensional squared distance transform (lower envelope of
/// parabolas rooted at the finite entries of `f`).
fn parabola_pass(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64))
                / (2.0 * (q as f64 - p as f64));
            if s <= z[k] {
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
                break;
            }
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        d[q] = dq * dq + f[p];
    }
}

/// One-cell 8-neighborhood dilation of a mask, toroidally: the slack
/// allowance when comparing rounded-shift masks against distance masks.
pub fn dilate(mask: &[bool], resolution: usize) -> Vec<bool> {
    assert_eq!(mask.len(), resolution * resolution, "mask size");
    let r = resolution as isize;
    let mut out = vec![false; mask.len()];
    for y in 0..r {
        for x in 0..r {
            if !mask[(y * r + x) as usize] {
                continue;
            }
            for ny in -1..=1isize {
                for nx in -1..=1isize {
                    let px = (x + nx).rem_euclid(r) as usize;
                    let py = (y + ny).rem_euclid(r) as usize;
                    out[py * resolution + px] = true;
                }
            }
        }
    }
    out
}

/// Returns true when every set cell of `inner` is also set in `outer`.
pub fn mask_subset(inner: &[bool], outer: &[bool]) -> bool {
    inner.iter().zip(outer).all(|(&a, &b)| !a || b)
}

/// Shape literals for raster construction: all centered in `[0,1]²`.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// Open disk of radius `r` at the center.
    Disk { r: f64 },
    /// Open axis-aligned square of the given side at the center.
    Square { side: f64 },
    /// Product of a one-dimensional Fat Cantor complement with `(0,1)`.
    CantorProduct { lambda: Rational, stage: u32 },
}

impl Shape {
    pub fn rasterize(&self, resolution: usize) -> Result<RasterSet> {
        match self {
            Shape::Disk { r } => {
                let r2 = r * r;
                rasterize(
                    |x, y| (x - 0.5).powi(2) + (y - 0.5).powi(2) < r2,
                    resolution,
                )
            }
            Shape::Square { side } => {
                let half = side / 2.0;
                rasterize(
                    |x, y| (x - 0.5).abs() < half && (y - 0.5).abs() < half,
                    resolution,
                )
            }
            Shape::CantorProduct { lambda, stage } => {
                let spec = FatCantorSpec::new(lambda.clone(), *stage)?;
                let (set, _) = fat_cantor_complement(&spec);
                let arcs: Vec<(f64, f64)> = set
                    .arcs()
                    .iter()
                    .map(|a| (to_f64(a.start()), to_f64(&a.end())))
                    .collect();
                rasterize(
                    move |x, _y| {
                        let i = arcs.partition_point(|&(start, _)| start < x);
                        i > 0 && x < arcs[i - 1].1
                    },
                    resolution,
                )
            }
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Shape> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("disk:") {
            let r: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(5, format!("bad radius '{rest}'")))?;
            if !(r > 0.0 && r < 0.5) {
                return Err(Error::range("disk radius", format!("{r} outside (0, 1/2)")));
            }
            return Ok(Shape::Disk { r });
        }
        if let Some(rest) = s.strip_prefix("square:") {
            let side: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(7, format!("bad side '{rest}'")))?;
            if !(side > 0.0 && side < 1.0) {
                return Err(Error::range("square side", format!("{side} outside (0, 1)")));
            }
            return Ok(Shape::Square { side });
        }
        if let Some(rest) = s.strip_prefix("cantor:") {
            let (lam, stage) = rest
                .split_once(',')
                .ok_or_else(|| Error::parse(7, "cantor takes lambda,stage"))?;
            let lambda = parse_rational(lam.trim())?;
            let stage: u32 = stage
                .trim()
                .parse()
                .map_err(|_| Error::parse(7, format!("bad stage '{stage}'")))?;
            FatCantorSpec::new(lambda.clone(), stage)?;
            return Ok(Shape::CantorProduct { lambda, stage });
        }
        Err(Error::parse(0, format!("unknown shape '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rasterize_matches_closed_form_areas() {
        let disk = Shape::Disk { r: 0.25 }.rasterize(512).unwrap();
        let exact = std::f64::consts::PI / 16.0;
        assert!((disk.area() - exact).abs() < 0.01 * exact);
        let empty = rasterize(|_, _| false, 16).unwrap();
        assert_eq!(empty.area(), 0.0);
        let full = rasterize(|_, _| true, 16).unwrap();
        assert!((full.area() - 1.0).abs() < 1e-15);
        assert!(rasterize(|_, _| true, 24).is_err());
        assert!(rasterize(|_, _| true, 8).is_err());
    }

    #[test]
    fn tau_directional_disk_against_lens_geometry() {
        let disk = Shape::Disk { r: 0.25 }.rasterize(1024).unwrap();
        let (r, h) = (0.25f64, 0.125f64);
        let lens = 2.0 * r * r * (h / (2.0 * r)).acos()
            - (h / 2.0) * (4.0 * r * r - h * h).sqrt();
        let exact = 2.0 * (std::f64::consts::PI * r * r - lens);
        let got = disk.tau_directional(h, (1.0, 0.0));
        assert!((got - exact).abs() < 0.02 * exact, "{got} vs {exact}");
        assert_eq!(disk.tau_directional(0.0, (1.0, 0.0)), 0.0);
    }

    #[test]
    fn tau_directional_square_slab_is_exact_on_grid() {
        for res in [512usize, 1024] {
            let square = Shape::Square { side: 0.5 }.rasterize(res).unwrap();
            let got = square.tau_directional(1.0 / 16.0, (1.0, 0.0));
            // shift is a whole number of cells here, so the slabs are exact
            assert!((got - 1.0 / 16.0).abs() < 2.0 * 0.5 / res as f64, "res {res}: {got}");
        }
    }

    #[test]
    fn tau_directional_is_translation_invariant() {
        let disk = Shape::Disk { r: 0.2 }.rasterize(64).unwrap();
        let moved = disk.translate_cells(17, -9);
        for v in [(1.0, 0.0), (0.0, 1.0), (0.6, 0.8)] {
            let a = disk.tau_directional(0.1, v);
            let b = moved.tau_directional(0.1, v);
            assert_eq!(a, b, "direction {v:?}");
        }
    }

    #[test]
    fn neighborhood_measures_match_sausage_geometry() {
        let square = Shape::Square { side: 0.5 }.rasterize(512).unwrap();
        let h = 1.0 / 16.0;
        let (deficit, gamma) = square.neighborhood_measures(h).unwrap();
        let perimeter = 2.0;
        let gamma_exact = 2.0 * h * perimeter + (std::f64::consts::PI - 4.0) * h * h;
        assert!((gamma - gamma_exact).abs() < 0.01, "{gamma} vs {gamma_exact}");
        let deficit_exact = h * perimeter - 4.0 * h * h;
        assert!((deficit - deficit_exact).abs() < 0.01, "{deficit} vs {deficit_exact}");

        let disk = Shape::Disk { r: 0.25 }.rasterize(512).unwrap();
        let (deficit, _) = disk.neighborhood_measures(h).unwrap();
        let annulus = 2.0 * std::f64::consts::PI * 0.25 * h - std::f64::consts::PI * h * h;
        assert!((deficit - annulus).abs() < 0.005, "{deficit} vs {annulus}");

        assert_eq!(square.neighborhood_measures(0.0).unwrap(), (0.0, 0.0));
        assert!(square.neighborhood_measures(-0.1).is_err());
    }

    #[test]
    fn inclusion_chain_holds_with_one_cell_slack() {
        let shapes = [
            Shape::Disk { r: 0.25 },
            Shape::Square { side: 0.5 },
            Shape::CantorProduct { lambda: rat(1, 4), stage: 3 },
        ];
        for shape in &shapes {
            let set = shape.rasterize(256).unwrap();
            let complement = set.distance_to_complement();
            let interface = set.distance_to_interface();
            for h in [1.0 / 32.0, 1.0 / 16.0] {
                for v in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
                    let eside = set.eside_disagreement_mask(h, v);
                    let deficit = set.deficit_mask(&complement, h);
                    let gamma = interface.within(h);
                    assert!(
                        mask_subset(&eside, &dilate(&deficit, 256)),
                        "{shape:?} h={h} v={v:?}: disagreement escapes collar"
                    );
                    assert!(
                        mask_subset(&deficit, &gamma),
                        "{shape:?} h={h}: collar escapes boundary neighborhood"
                    );
                }
            }
        }
    }

    #[test]
    fn distance_field_is_exact_on_a_small_torus() {
        let mut seeds = vec![false; 16 * 16];
        seeds[0] = true; // cell (0, 0)
        let field = DistanceField::from_seeds(&seeds, 16);
        assert_eq!(field.squared(0, 0), 0.0);
        assert_eq!(field.squared(15, 0), 1.0); // wraps
        assert_eq!(field.squared(8, 0), 64.0);
        assert_eq!(field.squared(3, 4), 25.0);
        assert_eq!(field.squared(15, 15), 2.0);
    }

    #[test]
    fn dimension_estimates_validate_input() {
        let disk = Shape::Disk { r: 0.25 }.rasterize(64).unwrap();
        assert!(disk.dimension_estimates(&[0.1, 0.2, 0.3]).is_err());
        assert!(disk
            .dimension_estimates(&[0.001, 0.1, 0.2, 0.3])
            .is_err());
        let est = disk
            .dimension_estimates(&[1.0 / 8.0, 1.0 / 10.0, 1.0 / 12.0, 1.0 / 16.0])
            .unwrap();
        assert!(est.d_x > 0.5 && est.d_x < 1.6, "d_x = {}", est.d_x);
        assert!(est.fit_x > 0.9);
    }

    #[test]
    fn pgm_round_trip_preserves_cells() {
        let dir = std::env::temp_dir().join("raster_pgm_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("disk.pgm");
        let disk = Shape::Disk { r: 0.2 }.rasterize(32).unwrap();
        disk.write_pgm(&path).unwrap();
        let back = RasterSet::read_pgm(&path).unwrap();
        assert_eq!(disk, back);
        let sidecar = std::fs::read_to_string(path.with_extension("pgm.json")).unwrap();
        assert!(sidecar.contains("32"));
        std::fs::write(dir.join("bad.pgm"), b"P2\n4 4\n1\n").unwrap();
        assert!(RasterSet::read_pgm(&dir.join("bad.pgm")).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn shape_literals_parse_and_reject() {
        assert_eq!("disk:0.25".parse::<Shape>().unwrap(), Shape::Disk { r: 0.25 });
        assert_eq!(
            "square:0.5".parse::<Shape>().unwrap(),
            Shape::Square { side: 0.5 }
        );
        assert_eq!(
            "cantor:1/4,4".parse::<Shape>().unwrap(),
            Shape::CantorProduct { lambda: rat(1, 4), stage: 4 }
        );
        assert!("disk:0.7".parse::<Shape>().is_err());
        assert!("cantor:1/2,4".parse::<Shape>().is_err());
        assert!("blob:1".parse::<Shape>().is_err());
    }
}
