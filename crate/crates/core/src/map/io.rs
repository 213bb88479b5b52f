//! The `.map` text format.
//!
//! One face per non-blank line, as whitespace-separated 1-based vertex ids in
//! cyclic order. Lines starting with `#` are comments. There is no header.

use super::{MapError, PolygonalMap};

/// A parsed `.map` file: the map plus its comment lines (without the `#`).
#[derive(Debug, Clone)]
pub struct MapFile {
    pub map: PolygonalMap,
    pub comments: Vec<String>,
}

impl MapFile {
    /// Value of the first `# key=value` comment with the given key.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.trim().split_once('=')?;
            (k.trim() == key).then_some(v.trim())
        })
    }
}

pub fn parse_map(text: &str) -> Result<MapFile, MapError> {
    let mut faces = Vec::new();
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.to_string());
            continue;
        }
        let face = line
            .split_whitespace()
            .map(|tok| match tok.parse::<usize>() {
                Ok(0) => Err(MapError::Parse {
                    line: idx + 1,
                    message: "vertex ids are 1-based; found 0".into(),
                }),
                Ok(v) => Ok(v - 1),
                Err(_) => Err(MapError::Parse {
                    line: idx + 1,
                    message: format!("not a vertex id: {tok:?}"),
                }),
            })
            .collect::<Result<Vec<usize>, _>>()?;
        faces.push(face);
    }
    Ok(MapFile {
        map: PolygonalMap::from_faces(faces)?,
        comments,
    })
}

/// Faces in stored order, one per line, 1-based.
pub fn to_map_string(map: &PolygonalMap) -> String {
    to_map_string_with_comments(map, &[])
}

pub fn to_map_string_with_comments(map: &PolygonalMap, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for face in map.faces() {
        let line: Vec<String> = face.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
