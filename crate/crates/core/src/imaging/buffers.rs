use crate::geometry::Rect;

/// 8-bit RGBA image with straight (non-premultiplied) alpha, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RgbaImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl std::fmt::Debug for RgbaImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RgbaImage({}x{})", self.width, self.height)
    }
}

impl RgbaImage {
    pub fn new(width: u32, height: u32) -> Self {
        Self::filled(width, height, [0, 0, 0, 0])
    }

    pub fn filled(width: u32, height: u32, px: [u8; 4]) -> Self {
        let n = width as usize * height as usize;
        let mut data = Vec::with_capacity(n * 4);
        for _ in 0..n {
            data.extend_from_slice(&px);
        }
        RgbaImage {
            width,
            height,
            data,
        }
    }

    /// Wraps raw RGBA bytes. Returns `None` if the length is not `width * height * 4`.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Option<Self> {
        (data.len() == width as usize * height as usize * 4).then_some(RgbaImage {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 4]) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize * 4);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        RgbaImage {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    fn offset(&self, x: u32, y: u32) -> usize {
        (y as usize * self.width as usize + x as usize) * 4
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 4] {
        let i = self.offset(x, y);
        [
            self.data[i],
            self.data[i + 1],
            self.data[i + 2],
            self.data[i + 3],
        ]
    }

    #[inline]
    pub fn put(&mut self, x: u32, y: u32, px: [u8; 4]) {
        let i = self.offset(x, y);
        self.data[i..i + 4].copy_from_slice(&px);
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 4]> + '_ {
        self.data.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]])
    }

    /// Copies the region `r` (image coordinates). `None` if `r` is not fully inside.
    pub fn crop(&self, r: &Rect) -> Option<RgbaImage> {
        if r.x < 0 || r.y < 0 || r.right() > self.width as i64 || r.bottom() > self.height as i64 {
            return None;
        }
        let mut data = Vec::with_capacity(r.area() as usize * 4);
        for y in r.y as u32..r.y as u32 + r.h {
            let start = self.offset(r.x as u32, y);
            data.extend_from_slice(&self.data[start..start + r.w as usize * 4]);
        }
        Some(RgbaImage {
            width: r.w,
            height: r.h,
            data,
        })
    }

    /// Fills `r` (clipped to the image) with `px`, ignoring what was there.
    pub fn fill_rect(&mut self, r: &Rect, px: [u8; 4]) {
        let Some(r) = r.intersect(&Rect::new(0, 0, self.width, self.height)) else {
            return;
        };
        for y in r.y as u32..r.y as u32 + r.h {
            for x in r.x as u32..r.x as u32 + r.w {
                self.put(x, y, px);
            }
        }
    }

    /// True when every pixel has all three colour channels at zero.
    pub fn rgb_all_zero(&self) -> bool {
        self.data
            .chunks_exact(4)
            .all(|c| c[0] == 0 && c[1] == 0 && c[2] == 0)
    }

    pub fn channel(&self, c: usize) -> Vec<u8> {
        self.data.chunks_exact(4).map(|p| p[c]).collect()
    }
}

/// Single-channel 8-bit image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl GrayImage {
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Option<Self> {
        (data.len() == width as usize * height as usize).then_some(GrayImage {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.data[y as usize * self.width as usize + x as usize]
    }
}

/// Matrix of {0, 1} cells. Used both for foreground masks and visible matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    width: u32,
    height: u32,
    cells: Vec<bool>,
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "BinaryMatrix({}x{}, area {})",
            self.width,
            self.height,
            self.area()
        )?;
        if self.width <= 32 && self.height <= 32 {
            for row in self.cells.chunks(self.width.max(1) as usize) {
                let line: String = row.iter().map(|&c| if c { '#' } else { '.' }).collect();
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

impl BinaryMatrix {
    pub fn zeros(width: u32, height: u32) -> Self {
        BinaryMatrix {
            width,
            height,
            cells: vec![false; width as usize * height as usize],
        }
    }

    pub fn ones(width: u32, height: u32) -> Self {
        BinaryMatrix {
            width,
            height,
            cells: vec![true; width as usize * height as usize],
        }
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut cells = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                cells.push(f(x, y));
            }
        }
        BinaryMatrix {
            width,
            height,
            cells,
        }
    }

    /// Parses rows of `#`/`1` (set) and `.`/`0` (unset). Handy for tests.
    pub fn from_rows(rows: &[&str]) -> Self {
        let height = rows.len() as u32;
        let width = rows.first().map_or(0, |r| r.chars().count()) as u32;
        let mut cells = Vec::new();
        for row in rows {
            assert_eq!(row.chars().count() as u32, width, "ragged rows");
            cells.extend(row.chars().map(|c| matches!(c, '#' | '1')));
        }
        BinaryMatrix {
            width,
            height,
            cells,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.cells[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, v: bool) {
        let w = self.width as usize;
        self.cells[y as usize * w + x as usize] = v;
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    /// Number of set cells.
    pub fn area(&self) -> u64 {
        self.cells.iter().filter(|&&c| c).count() as u64
    }

    /// Copies region `r` (matrix coordinates); `None` if `r` is not fully inside.
    pub fn slice(&self, r: &Rect) -> Option<BinaryMatrix> {
        if r.x < 0 || r.y < 0 || r.right() > self.width as i64 || r.bottom() > self.height as i64 {
            return None;
        }
        Some(BinaryMatrix::from_fn(r.w, r.h, |x, y| {
            self.get(r.x as u32 + x, r.y as u32 + y)
        }))
    }

    /// Writes `src` into this matrix with its top-left at (`x`, `y`).
    pub fn replace_region(&mut self, x: u32, y: u32, src: &BinaryMatrix) {
        assert!(x + src.width <= self.width && y + src.height <= self.height);
        for sy in 0..src.height {
            for sx in 0..src.width {
                self.set(x + sx, y + sy, src.get(sx, sy));
            }
        }
    }

    pub fn and(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!((self.width, self.height), (other.width, other.height));
        BinaryMatrix {
            width: self.width,
            height: self.height,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }

    /// Cells set here and not set in `other`.
    pub fn subtract(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!((self.width, self.height), (other.width, other.height));
        BinaryMatrix {
            width: self.width,
            height: self.height,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| *a && !*b)
                .collect(),
        }
    }
}
