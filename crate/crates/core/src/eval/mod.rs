//! Clustering-quality metrics and level-set ground truth.

mod contingency;
mod hausdorff;
mod levelset;
mod mutual_info;
mod noise;
mod rand_index;
mod report;

pub use contingency::{contingency, contingency_with, ContingencyTable, NoiseHandling};
pub use hausdorff::{directed_hausdorff, hausdorff_distance};
pub use levelset::{level_set_ground_truth, BoxComponent, DensityFamily, DensitySpec, GaussianComponent};
pub use mutual_info::{
    adjusted_mutual_info, adjusted_mutual_info_with, entropy, expected_mutual_information, mutual_information,
    AmiNormalization,
};
pub use noise::{noise_report, NoiseReport};
pub use rand_index::{adjusted_rand_index, adjusted_rand_index_with};
pub use report::EvalReport;
