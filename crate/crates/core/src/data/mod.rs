//! Dataset ingestion and seeded synthetic generators.

mod csv_io;
mod ppm;
mod synth;

pub use csv_io::{load_csv, write_csv, LabelColumn};
pub use ppm::{labels_to_image, load_image_ppm, palette_color, read_ppm, write_ppm, PpmImage};
pub use synth::{gaussian_mixture, preset, uniform_mixture, AxisBox, PRESETS};
pub(crate) use synth::check_weights_sum as synth_check_weights;

use crate::dataset::Dataset;
use crate::labels::ClusterLabels;

/// A dataset with optional ground-truth labels. Ground truth never contains NOISE.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset {
    pub data: Dataset,
    pub truth: Option<ClusterLabels>,
}

impl LabeledDataset {
    pub fn unlabeled(data: Dataset) -> Self {
        Self { data, truth: None }
    }
}
