use serde::Serialize;

use super::{trace_faces, EmbeddingError, RotationSystem};
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "cause", rename_all = "snake_case")]
pub enum FailureCause {
    WrongLength { length: usize },
    RepeatedVertex { vertex: Vertex },
    RepeatedEdge { u: Vertex, v: Vertex },
    GenusMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceFailure {
    /// Index into the traced face list; `None` for whole-embedding failures.
    pub face: Option<usize>,
    #[serde(flatten)]
    pub cause: FailureCause,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Every face is a 4-cycle on four distinct vertices.
    pub is_quadrangulation: bool,
    pub genus: usize,
    pub faces: usize,
    pub failures: Vec<FaceFailure>,
}

impl VerificationReport {
    /// Quadrangulation with the expected genus, when one was given.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Everything wrong with a single closed face walk.
pub fn check_face(walk: &[Vertex]) -> Vec<FailureCause> {
    let mut causes = Vec::new();
    let k = walk.len();
    if k != 4 {
        causes.push(FailureCause::WrongLength { length: k });
    }
    if let Some(&vertex) = walk.iter().enumerate().find(|(i, v)| walk[..*i].contains(v)).map(|(_, v)| v) {
        causes.push(FailureCause::RepeatedVertex { vertex });
    }
    let mut edges: Vec<(Vertex, Vertex)> =
        (0..k).map(|i| (walk[i].min(walk[(i + 1) % k]), walk[i].max(walk[(i + 1) % k]))).collect();
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        causes.push(FailureCause::RepeatedEdge { u: w[0].0, v: w[0].1 });
    }
    causes
}

/// Traces `rs` and checks that every face is a simple quadrilateral, and
/// that the genus matches `expected_genus` when given. Failures are
/// reported as data; only an untraceable embedding is an error.
pub fn verify_quadrangulation(
    rs: &RotationSystem,
    expected_genus: Option<usize>,
) -> Result<VerificationReport, EmbeddingError> {
    let fs = trace_faces(rs)?;
    let mut failures: Vec<FaceFailure> = fs
        .faces
        .iter()
        .enumerate()
        .flat_map(|(i, f)| check_face(f).into_iter().map(move |cause| FaceFailure { face: Some(i), cause }))
        .collect();
    let is_quadrangulation = failures.is_empty();
    if let Some(expected) = expected_genus.filter(|&e| e != fs.genus) {
        failures.push(FaceFailure { face: None, cause: FailureCause::GenusMismatch { expected, actual: fs.genus } });
    }
    Ok(VerificationReport { is_quadrangulation, genus: fs.genus, faces: fs.alpha2, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::enumerate_embeddings;
    use crate::embedding::EnumerationBudget;
    use crate::graph::{complete_graph, cycle_graph, path_graph};

    #[test]
    fn c4_sphere_passes() {
        let rs =
            RotationSystem::new(cycle_graph(4).unwrap(), vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]).unwrap();
        let report = verify_quadrangulation(&rs, Some(0)).unwrap();
        assert!(report.is_quadrangulation && report.passed());
        assert_eq!((report.genus, report.faces), (0, 2));
        let wrong = verify_quadrangulation(&rs, Some(1)).unwrap();
        assert!(wrong.is_quadrangulation && !wrong.passed());
        assert_eq!(wrong.failures[0].cause, FailureCause::GenusMismatch { expected: 1, actual: 0 });
    }

    #[test]
    fn two_vertex_walk() {
        let causes = check_face(&[3, 5, 3, 5]);
        assert!(causes.contains(&FailureCause::RepeatedVertex { vertex: 3 }));
        assert!(causes.contains(&FailureCause::RepeatedEdge { u: 3, v: 5 }));
        assert!(check_face(&[0, 1, 2, 3]).is_empty());
        assert_eq!(check_face(&[0, 1, 2]), vec![FailureCause::WrongLength { length: 3 }]);
    }

    #[test]
    fn path_face_is_not_simple() {
        // the single face of a planar P3 walks 0 -> 1 -> 2 -> 1 -> 0
        let rs = RotationSystem::new(path_graph(3).unwrap(), vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let report = verify_quadrangulation(&rs, None).unwrap();
        assert!(!report.is_quadrangulation);
        assert_eq!(report.faces, 1);
        let causes: Vec<_> = report.failures.iter().map(|f| f.cause.clone()).collect();
        assert!(causes.contains(&FailureCause::RepeatedVertex { vertex: 1 }));
        assert!(causes.iter().any(|c| matches!(c, FailureCause::RepeatedEdge { .. })));
    }

    #[test]
    fn no_rotation_of_k4_quadrangulates() {
        let all: Vec<_> = enumerate_embeddings(&complete_graph(4).unwrap(), EnumerationBudget::default(), |_| true)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 8);
        for rs in &all {
            let report = verify_quadrangulation(rs, None).unwrap();
            assert!(!report.is_quadrangulation);
            assert!(report.failures.iter().any(|f| matches!(f.cause, FailureCause::WrongLength { .. })));
        }
    }
}
