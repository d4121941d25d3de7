use super::BinaryMatrix;
use crate::geometry::Rect;

/// One 8-connected region of set cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectedComponent {
    /// Dense label starting at 1, in order of first appearance in a row-major scan.
    pub label: u32,
    /// Tight bounding box in matrix coordinates.
    pub bbox: Rect,
    /// Pixel count.
    pub area: u64,
}

/// Labels the set cells of `m` with 8-connectivity.
///
/// Classic two-pass labelling with a union-find over provisional labels. The
/// output is ordered by each component's first pixel in row-major order.
pub fn connected_components(m: &BinaryMatrix) -> Vec<ConnectedComponent> {
    let (w, h) = (m.width() as usize, m.height() as usize);
    let mut labels = vec![0u32; w * h];
    let mut parent: Vec<u32> = vec![0];

    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    fn union(parent: &mut [u32], a: u32, b: u32) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        // keep the smaller root so roots follow first-appearance order
        if ra < rb {
            parent[rb as usize] = ra;
        } else if rb < ra {
            parent[ra as usize] = rb;
        }
    }

    let cells = m.cells();
    for y in 0..h {
        for x in 0..w {
            if !cells[y * w + x] {
                continue;
            }
            let mut neighbours = [0u32; 4];
            let mut n = 0;
            if x > 0 && labels[y * w + x - 1] != 0 {
                neighbours[n] = labels[y * w + x - 1];
                n += 1;
            }
            if y > 0 {
                let up = (y - 1) * w;
                if x > 0 && labels[up + x - 1] != 0 {
                    neighbours[n] = labels[up + x - 1];
                    n += 1;
                }
                if labels[up + x] != 0 {
                    neighbours[n] = labels[up + x];
                    n += 1;
                }
                if x + 1 < w && labels[up + x + 1] != 0 {
                    neighbours[n] = labels[up + x + 1];
                    n += 1;
                }
            }
            let label = if n == 0 {
                let l = parent.len() as u32;
                parent.push(l);
                l
            } else {
                let min = *neighbours[..n].iter().min().unwrap();
                for &nb in &neighbours[..n] {
                    union(&mut parent, min, nb);
                }
                min
            };
            labels[y * w + x] = label;
        }
    }

    // resolve roots and renumber densely by first appearance
    let mut dense = vec![0u32; parent.len()];
    let mut out: Vec<(u32, u32, u32, u32, u64)> = Vec::new(); // x0, y0, x1, y1, area
    for y in 0..h {
        for x in 0..w {
            let l = labels[y * w + x];
            if l == 0 {
                continue;
            }
            let root = find(&mut parent, l) as usize;
            if dense[root] == 0 {
                out.push((x as u32, y as u32, x as u32, y as u32, 0));
                dense[root] = out.len() as u32;
            }
            let e = &mut out[dense[root] as usize - 1];
            e.0 = e.0.min(x as u32);
            e.1 = e.1.min(y as u32);
            e.2 = e.2.max(x as u32);
            e.3 = e.3.max(y as u32);
            e.4 += 1;
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, (x0, y0, x1, y1, area))| ConnectedComponent {
            label: i as u32 + 1,
            bbox: Rect::new(x0 as i32, y0 as i32, x1 - x0 + 1, y1 - y0 + 1),
            area,
        })
        .collect()
}
