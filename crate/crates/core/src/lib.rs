pub mod cli;
pub mod engine;
pub mod error;
pub mod expr;
pub mod innumber;
pub mod generations;
pub mod limit;
pub mod oracle;
pub mod parse;
pub mod prototype;
pub mod scalar;
pub mod tower;

pub use error::{AlgebraError, EngineError, InputError, OracleError, ParseError, ProtoError};
pub use innumber::{InNumber, InfiniteSplit};
pub use limit::{Limit, Term};
pub use prototype::{BaseAtom, CardinalHeight, Prototype, TowerDirection};
pub use scalar::Scalar;
pub use expr::SeqExpr;
pub use tower::TowerValue;
