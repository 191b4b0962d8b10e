//! Writes tables and rasters into one run directory and records their digests.

use crate::config::Format;
use crate::error::CliError;
use crate::manifest::{sha256_hex, OutputRecord};
use crate::table::Table;
use image::GrayImage;
use std::fs;
use std::path::{Path, PathBuf};

pub struct Sink {
    dir: PathBuf,
    stem: String,
    format: Format,
    raster: bool,
    records: Vec<OutputRecord>,
}

impl Sink {
    pub fn new(dir: &Path, stem: &str, format: Format, raster: bool) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            stem: stem.to_string(),
            format,
            raster,
            records: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn name(&self, suffix: &str, ext: &str) -> String {
        if suffix.is_empty() {
            format!("{}.{ext}", self.stem)
        } else {
            format!("{}_{suffix}.{ext}", self.stem)
        }
    }

    fn save(&mut self, file: String, bytes: &[u8]) -> Result<(), CliError> {
        fs::write(self.dir.join(&file), bytes)?;
        self.records.push(OutputRecord {
            file,
            bytes: bytes.len() as u64,
            sha256: sha256_hex(bytes),
        });
        Ok(())
    }

    /// `<stem>[_suffix].csv` or `.json`.
    pub fn table(&mut self, suffix: &str, table: &Table) -> Result<(), CliError> {
        let ext = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let mut buf = Vec::with_capacity(64 * table.rows.len() + 256);
        table.write(self.format, &mut buf)?;
        self.save(self.name(suffix, ext), &buf)
    }

    /// 8-bit grayscale PNG scaled to the largest finite value; row 0 of
    /// `values` is the bottom of the image. Skipped unless rasters are enabled.
    pub fn raster(&mut self, suffix: &str, nx: usize, ny: usize, values: &[f64]) -> Result<(), CliError> {
        if !self.raster {
            return Ok(());
        }
        let top = values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
        let mut pixels = vec![0u8; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                let v = values[j * nx + i];
                let level = if v.is_finite() && top > 0.0 { (255.0 * v / top).round() as u8 } else { 0 };
                pixels[(ny - 1 - j) * nx + i] = level;
            }
        }
        let img = GrayImage::from_raw(nx as u32, ny as u32, pixels).expect("buffer matches dimensions");
        let mut bytes = Vec::new();
        img.write_to(&mut std::io::Cursor::new(&mut bytes), image::ImageFormat::Png)?;
        self.save(self.name(suffix, "png"), &bytes)
    }

    pub fn into_records(self) -> Vec<OutputRecord> {
        self.records
    }
}
