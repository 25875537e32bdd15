use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Orthogonal and complex image moments.
#[derive(Debug, Parser)]
#[command(name = "imoments", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Values given here override `--config`.
#[derive(Debug, Args, Default, Clone)]
pub struct Common {
    /// Moment family, or two comma-separated rectangular families (x,y):
    /// cheby, chebycont, legend, gegen, krawt, hahn, gpzm, fm, chebyfourier, rhf
    #[arg(long = "type", global = true, value_name = "FAMILY[,FAMILY]")]
    pub kind: Option<String>,
    /// Maximum order: `P`, or `PxQ` for rectangular families
    #[arg(long, global = true, value_name = "P|PxQ")]
    pub order: Option<String>,
    /// Gegenbauer, Krawtchouk or GPZM parameter of the chosen family
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Dual Hahn parameter a
    #[arg(long = "hahn-a", global = true, allow_hyphen_values = true)]
    pub hahn_a: Option<f64>,
    /// Dual Hahn parameter c
    #[arg(long = "hahn-c", global = true, allow_hyphen_values = true)]
    pub hahn_c: Option<f64>,
    /// Angular samples per unit radius for the polar transform
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Disk center: `auto` (intensity centroid) or `cx,cy` in 1-based pixels
    #[arg(long, global = true, value_name = "auto|CX,CY")]
    pub center: Option<String>,
    /// Worker threads; defaults to IM_THREADS, then all cores
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// File of `key=value` lines supplying defaults for the options above
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute moments of an image and write a moment file
    Moments {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write rotation invariants (disk families) or flattened moments as CSV
    Invariants {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild an image from a moment file, optionally truncated with --order
    Reconstruct {
        moments: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Unwrap an image onto radius x angle axes
    Polar {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Map a polar image back onto the original frame
    Unpolar {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Sidecar written by `polar` (default: INPUT.polar)
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// PSNR and timing sweep over truncation orders, as CSV
    Bench {
        /// Image to sweep; the built-in synthetic image when omitted
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "10,25,50,75")]
        orders: Vec<usize>,
        /// Side of the synthetic image
        #[arg(long, default_value_t = 256)]
        size: usize,
        /// Seed of the synthetic image
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// k-NN classification of images in class-named subdirectories
    Classify {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(short, default_value_t = 3)]
        k: usize,
        /// Skip mass normalization and standardization of the features
        #[arg(long)]
        raw_features: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dump a rectangular kernel table as CSV
    Tables {
        /// Number of sample points
        #[arg(short = 'n', long)]
        size: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate the seeded synthetic shapes dataset as PNG files
    Shapes {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 20)]
        per_class: usize,
        #[arg(long, default_value_t = 64)]
        size: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also split into OUT/train and OUT/test with this many training images per class
        #[arg(long)]
        train_per_class: Option<usize>,
    },
}
