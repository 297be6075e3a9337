use num_complex::Complex64;
use rustfft::Fft;

/// Which end of a transform is confined to the dealiasing cube. `kept[i]`
/// marks the axis indices inside the cube.
#[derive(Clone, Copy)]
pub(super) enum Support<'a> {
    Full,
    /// Input is zero outside the cube.
    Input(&'a [bool]),
    /// Output is only needed inside the cube; other entries are garbage.
    Output(&'a [bool]),
}

/// Separable 3D transform on row-major `(x, y, z)` storage. The z pass runs
/// on contiguous lines; the y and x passes transpose one plane at a time
/// into a buffer so that every batch of lines is contiguous. With a
/// restricted support, lines that are identically zero (or not needed) are
/// skipped.
pub(super) fn transform3(n: usize, data: &mut [Complex64], plan: &dyn Fft<f64>, support: Support) {
    assert_eq!(data.len(), n * n * n);
    let mut w = Work {
        n,
        plan,
        scratch: vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()],
        plane: vec![Complex64::new(0.0, 0.0); n * n],
    };
    match support {
        Support::Full => {
            w.plan.process_with_scratch(data, &mut w.scratch);
            w.y_pass(data, None);
            w.x_pass(data);
        }
        Support::Input(kept) => {
            w.z_pass(data, kept);
            w.y_pass(data, Some(kept));
            w.x_pass(data);
        }
        Support::Output(kept) => {
            w.x_pass(data);
            w.y_pass(data, Some(kept));
            w.z_pass(data, kept);
        }
    }
}

struct Work<'a> {
    n: usize,
    plan: &'a dyn Fft<f64>,
    scratch: Vec<Complex64>,
    plane: Vec<Complex64>,
}

impl Work<'_> {
    fn z_pass(&mut self, data: &mut [Complex64], kept: &[bool]) {
        let n = self.n;
        for ix in (0..n).filter(|i| kept[*i]) {
            for iy in (0..n).filter(|i| kept[*i]) {
                let start = (ix * n + iy) * n;
                self.plan.process_with_scratch(&mut data[start..start + n], &mut self.scratch);
            }
        }
    }

    /// Plane `ix` is `(iy, iz)`; transpose to `(iz, iy)`.
    fn y_pass(&mut self, data: &mut [Complex64], kept: Option<&[bool]>) {
        let n = self.n;
        let nn = n * n;
        let plane = &mut self.plane;
        for ix in (0..n).filter(|i| kept.is_none_or(|k| k[*i])) {
            let slab = &mut data[ix * nn..(ix + 1) * nn];
            for iy in 0..n {
                for iz in 0..n {
                    plane[iz * n + iy] = slab[iy * n + iz];
                }
            }
            self.plan.process_with_scratch(plane, &mut self.scratch);
            for iy in 0..n {
                for iz in 0..n {
                    slab[iy * n + iz] = plane[iz * n + iy];
                }
            }
        }
    }

    /// Plane `iy` is `(ix, iz)`; transpose to `(iz, ix)`.
    fn x_pass(&mut self, data: &mut [Complex64]) {
        let n = self.n;
        let plane = &mut self.plane;
        for iy in 0..n {
            for ix in 0..n {
                let row = &data[(ix * n + iy) * n..(ix * n + iy + 1) * n];
                for iz in 0..n {
                    plane[iz * n + ix] = row[iz];
                }
            }
            self.plan.process_with_scratch(plane, &mut self.scratch);
            for ix in 0..n {
                let row = &mut data[(ix * n + iy) * n..(ix * n + iy + 1) * n];
                for iz in 0..n {
                    row[iz] = plane[iz * n + ix];
                }
            }
        }
    }
}
