use serde::Deserialize;

use crate::{Error, Result};

use super::gcm::Gcm;

/// On-disk description of a GCM, in TOML.
///
/// All vertex indices in the file are 1-based; the in-memory types are
/// 0-based. Only `cartan` is mandatory:
///
/// ```toml
/// cartan = [[2, -1], [-2, 2]]
/// symmetrizer = [2, 1]          # optional, minimal one is derived otherwise
/// orientation = [[1, 2]]        # optional list of ordered pairs (source, target)
/// height = [0, 1]               # optional, one integer per vertex
/// quiver_edges = [[1, 2]]       # optional, ordered pairs for the mass-parameter quiver
/// ```
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GcmFile {
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Option<Vec<i64>>,
    pub orientation: Option<Vec<[usize; 2]>>,
    pub height: Option<Vec<i64>>,
    pub quiver_edges: Option<Vec<[usize; 2]>>,
}

impl GcmFile {
    /// Parse the TOML text of a GCM file.
    pub fn parse(text: &str) -> Result<GcmFile> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Build and validate the described GCM.
    pub fn to_gcm(&self) -> Result<Gcm> {
        let orientation = match &self.orientation {
            None => None,
            Some(pairs) => Some(pairs_zero_based(pairs, self.cartan.len(), "orientation")?),
        };
        Gcm::with_orientation(self.cartan.clone(), self.symmetrizer.clone(), orientation)
    }

    /// The height function, checked for length only; adjacency constraints
    /// are the concern of the operations that consume it.
    pub fn height(&self) -> Result<Option<Vec<i64>>> {
        if let Some(h) = &self.height {
            if h.len() != self.cartan.len() {
                return Err(Error::Parse(format!(
                    "height has {} entries but the matrix has {} rows",
                    h.len(),
                    self.cartan.len()
                )));
            }
        }
        Ok(self.height.clone())
    }

    /// Quiver edges as 0-based `(source, target)` pairs.
    pub fn quiver_edges(&self) -> Result<Option<Vec<(usize, usize)>>> {
        match &self.quiver_edges {
            None => Ok(None),
            Some(pairs) => Ok(Some(pairs_zero_based(pairs, self.cartan.len(), "quiver_edges")?)),
        }
    }
}

fn pairs_zero_based(
    pairs: &[[usize; 2]],
    n: usize,
    field: &str,
) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&[a, b]| {
            if a == 0 || b == 0 || a > n || b > n {
                Err(Error::Parse(format!(
                    "{field} pair ({a}, {b}) out of range; vertices are 1..={n}"
                )))
            } else {
                Ok((a - 1, b - 1))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file_round_trip() {
        let text = r#"
            cartan = [[2, -1], [-2, 2]]
            symmetrizer = [2, 1]
            orientation = [[2, 1]]
            height = [0, 1]
            quiver_edges = [[2, 1]]
        "#;
        let file = GcmFile::parse(text).unwrap();
        let g = file.to_gcm().unwrap();
        assert_eq!(g.symmetrizer(), &[2, 1]);
        assert_eq!(g.orientation(), &[(1, 0)]);
        assert_eq!(file.height().unwrap(), Some(vec![0, 1]));
        assert_eq!(file.quiver_edges().unwrap(), Some(vec![(1, 0)]));
    }

    #[test]
    fn minimal_file_uses_defaults() {
        let file = GcmFile::parse("cartan = [[2, -1], [-1, 2]]").unwrap();
        let g = file.to_gcm().unwrap();
        assert_eq!(g.symmetrizer(), &[1, 1]);
        assert_eq!(g.orientation(), &[(0, 1)]);
        assert_eq!(file.height().unwrap(), None);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(GcmFile::parse("cartan = 3"), Err(Error::Parse(_))));
        assert!(matches!(
            GcmFile::parse("cartan = [[2]]\nunknown_field = 1"),
            Err(Error::Parse(_))
        ));
        // Out-of-range 1-based index.
        let file = GcmFile::parse("cartan = [[2, -1], [-1, 2]]\norientation = [[1, 3]]").unwrap();
        assert!(matches!(file.to_gcm(), Err(Error::Parse(_))));
        // Height of the wrong length.
        let file = GcmFile::parse("cartan = [[2, -1], [-1, 2]]\nheight = [0]").unwrap();
        assert!(matches!(file.height(), Err(Error::Parse(_))));
    }
}
