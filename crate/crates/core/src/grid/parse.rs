//! Text input formats for cell collections.
//!
//! Format A lists one cell per line as `i j` (lower-left corner); `#` starts a comment.
//! Format B is ascii art of `.` and `#` with the first line as the top row.

use super::{Cell, CellCollection, GridError};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> GridError {
    GridError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses format A.
pub fn parse_coordinates(text: &str) -> Result<CellCollection, GridError> {
    let mut cells = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut col = 0usize;
        for piece in content.split(|c: char| c.is_whitespace() || c == ',') {
            if !piece.is_empty() {
                let start = content[col..].find(piece).map(|o| o + col).unwrap_or(col);
                fields.push((start + 1, piece));
                col = start + piece.len();
            }
        }
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(parse_err(
                line_no,
                fields[0].0,
                format!("expected two coordinates, found {}", fields.len()),
            ));
        }
        let mut coords = [0u32; 2];
        for (slot, (column, piece)) in fields.iter().enumerate() {
            let value: u32 = piece
                .parse()
                .map_err(|_| parse_err(line_no, *column, format!("invalid coordinate `{piece}`")))?;
            if value == 0 {
                return Err(parse_err(line_no, *column, "coordinates must be positive"));
            }
            coords[slot] = value;
        }
        let cell = Cell::new(coords[0], coords[1]);
        if cells.contains(&cell) {
            return Err(parse_err(
                line_no,
                fields[0].0,
                format!("duplicate cell ({},{})", coords[0], coords[1]),
            ));
        }
        cells.push(cell);
    }
    CellCollection::new(cells)
}

/// Parses format B; the bottom-left occupied position becomes `(1,1)` after trimming.
pub fn parse_ascii_art(text: &str) -> Result<CellCollection, GridError> {
    let rows: Vec<&str> = text.lines().collect();
    let mut marks = Vec::new();
    for (ln, row) in rows.iter().enumerate() {
        for (col, ch) in row.chars().enumerate() {
            match ch {
                '#' => marks.push((col as i64, ln as i64)),
                '.' | ' ' | '\t' | '\r' => {}
                other => {
                    return Err(parse_err(ln + 1, col + 1, format!("unexpected character `{other}`")))
                }
            }
        }
    }
    if marks.is_empty() {
        return Err(GridError::Empty);
    }
    let min_x = marks.iter().map(|m| m.0).min().unwrap_or(0);
    let max_y = marks.iter().map(|m| m.1).max().unwrap_or(0);
    let cells = marks
        .into_iter()
        .map(|(x, y)| Cell::try_new(x - min_x + 1, max_y - y + 1).expect("positive after trim"));
    CellCollection::new(cells)
}

/// Chooses format B when the text consists only of art characters, else format A.
pub fn parse_auto(text: &str) -> Result<CellCollection, GridError> {
    let art = text.contains('#')
        && text
            .chars()
            .all(|c| matches!(c, '#' | '.' | ' ' | '\t' | '\r' | '\n'));
    if art {
        parse_ascii_art(text)
    } else {
        parse_coordinates(text)
    }
}
