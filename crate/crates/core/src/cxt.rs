//! Burmeister `.cxt` reading and writing.
//!
//! ```text
//! B
//!
//! <object count>
//! <attribute count>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row per object over {'.', 'X'}>
//! ```

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::sets;

pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let mut cursor = Lines { lines: &lines, next: 0 };

    let header = cursor.next_line()?;
    if header.1 != "B" {
        return Err(Error::parse(header.0, "expected header `B`"));
    }
    cursor.expect_blank()?;
    let object_count = cursor.count("object count")?;
    let attribute_count = cursor.count("attribute count")?;
    cursor.expect_blank()?;

    let mut objects = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        objects.push(cursor.next_line()?.1.to_owned());
    }
    let mut attributes = Vec::with_capacity(attribute_count);
    for _ in 0..attribute_count {
        attributes.push(cursor.next_line()?.1.to_owned());
    }

    let mut rows = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        let (line_no, line) = cursor.next_line()?;
        let chars: Vec<char> = line.chars().collect();
        if chars.len() != attribute_count {
            return Err(Error::parse(
                line_no,
                format!("row has {} entries, expected {attribute_count}", chars.len()),
            ));
        }
        let mut row = sets::empty(attribute_count);
        for (m, c) in chars.into_iter().enumerate() {
            match c {
                'X' | 'x' => row.insert(m),
                '.' => {}
                other => return Err(Error::parse(line_no, format!("illegal row character {other:?}"))),
            }
        }
        rows.push(row);
    }

    while cursor.next < lines.len() {
        let (line_no, line) = (cursor.next + 1, lines[cursor.next]);
        if !line.trim().is_empty() {
            return Err(Error::parse(line_no, "unexpected content after the last row"));
        }
        cursor.next += 1;
    }

    FormalContext::from_rows(objects, attributes, rows).map_err(|e| match e {
        Error::DuplicateName { kind, name } => Error::parse(0, format!("duplicate {kind} name `{name}`")),
        other => other,
    })
}

pub fn write_cxt(context: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n\n");
    out.push_str(&format!(
        "{}\n{}\n\n",
        context.object_count(),
        context.attribute_count()
    ));
    for name in context.objects() {
        out.push_str(name);
        out.push('\n');
    }
    for name in context.attributes() {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..context.object_count() {
        for m in 0..context.attribute_count() {
            out.push(if context.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    lines: &'a [&'a str],
    next: usize,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        // a trailing newline yields one final empty element, which is not a line
        let available = match self.lines.last() {
            Some(&"") => self.lines.len() - 1,
            _ => self.lines.len(),
        };
        if self.next >= available {
            return Err(Error::parse(self.next + 1, "unexpected end of file"));
        }
        let line = self.lines[self.next];
        self.next += 1;
        Ok((self.next, line))
    }

    fn expect_blank(&mut self) -> Result<()> {
        let (no, line) = self.next_line()?;
        if !line.trim().is_empty() {
            return Err(Error::parse(no, "expected blank line"));
        }
        Ok(())
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let (no, line) = self.next_line()?;
        line.trim()
            .parse()
            .map_err(|_| Error::parse(no, format!("invalid {what} `{line}`")))
    }
}
