//! Spinal quadrangulations: interlaced graphs, their quadrilateral
//! embeddings, and the order and chromatic bounds that go with them.

pub mod chromatic;
pub mod corpus;
pub mod embedder;
pub mod embedding;
pub mod graph;
pub mod interlace;
pub mod par;
pub mod recipe;
pub mod search;
pub mod synthesis;
pub mod text;

pub use chromatic::{chromatic_number, ChromaticError, ChromaticSolver};
pub use embedder::{embed_interlacement, embed_interlacement_traced, embed_spine_family, EmbedError, EmbedderTrace};
pub use embedding::{trace_faces, verify_quadrangulation, EmbeddingError, FaceSet, RotationSystem, VerificationReport};
pub use graph::{Edge, Graph, GraphError, Vertex};
pub use interlace::{interlacement, InterlaceError, InterlacedGraph};
pub use par::Execution;
pub use recipe::SpineRecipe;
pub use search::{search_quad_embedding, SearchConfig, SearchError};
