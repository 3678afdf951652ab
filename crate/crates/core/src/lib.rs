pub mod chiral;
pub mod classification;
pub mod error;
pub mod fusion;
pub mod lwmodules;
pub mod scalars;
pub mod superalgebra;
pub mod unitarity;
pub mod verify;

pub use chiral::{ChiralRingElement, RamondVacuumSet};
pub use classification::{classify, ExtensionKind, ExtensionRecord, SimpleCurrentGroup};
pub use error::{Error, Result};
pub use fusion::{CosetSector, FusionVector, NSFermiSector};
pub use lwmodules::{build_module, HighestWeight, ModuleHandle, QMatrix, SectorType};
pub use scalars::{Phase, Rational, Scalar};
pub use superalgebra::{AlgebraElement, Family, FlowParam, GeneratorId};
pub use unitarity::{DiscreteLabel, Region};
