//! Graph lists in graph6, one graph per line.

use std::io::{BufRead, Write};

use bowtie_core::{graph6, Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: GraphError },
}

/// Blank lines and a leading `>>graph6<<` header are skipped.
pub fn read_graph6(reader: impl BufRead) -> Result<Vec<Graph>, ReadError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        if text.is_empty() {
            continue;
        }
        out.push(graph6::decode(text).map_err(|source| ReadError::Parse { line: i + 1, source })?);
    }
    Ok(out)
}

pub fn write_graph6<'a>(mut w: impl Write, graphs: impl IntoIterator<Item = &'a Graph>) -> std::io::Result<()> {
    for g in graphs {
        writeln!(w, "{}", graph6::encode(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bowtie_core::families;

    #[test]
    fn lines_round_trip() {
        let gs = [families::make_fan(2).unwrap(), families::complete(4), Graph::empty(0)];
        let mut buf = Vec::new();
        write_graph6(&mut buf, &gs).unwrap();
        let back = read_graph6(&buf[..]).unwrap();
        assert_eq!(back, gs);
    }

    #[test]
    fn reports_bad_line() {
        let err = read_graph6(&b"C~\n\n!!\n"[..]).unwrap_err();
        assert!(matches!(err, ReadError::Parse { line: 3, .. }), "{err}");
    }
}
