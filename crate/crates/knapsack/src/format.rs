//! Plain-text instance files.
//!
//! ```text
//! <n> <W>
//! <w_1> <v_1>
//! ...
//! <w_n> <v_n>
//! # optimum <value>
//! ```
//!
//! Whitespace-tolerant; `#` starts a comment anywhere on a line. The
//! `# optimum` and `# name` comments carry optional metadata and are
//! written back by [`serialize_instance`].

use crate::error::{Error, Result};
use crate::problem::Instance;

/// Parse an instance from text. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, f64)> = None;
    let mut items: Vec<(f64, f64)> = Vec::new();
    let mut optimum: Option<f64> = None;
    let mut name: Option<String> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (data, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(raw[pos + 1..].trim())),
            None => (raw, None),
        };
        if let Some(comment) = comment {
            if let Some(rest) = comment.strip_prefix("optimum") {
                let v: f64 = rest.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("malformed optimum comment: {comment:?}"),
                })?;
                optimum = Some(v);
            } else if let Some(rest) = comment.strip_prefix("name") {
                let trimmed = rest.trim();
                if !trimmed.is_empty() {
                    name = Some(trimmed.to_string());
                }
            }
        }

        let fields: Vec<&str> = data.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if header.is_none() {
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected header `<n> <W>`, got {} fields", fields.len()),
                });
            }
            let n: usize = fields[0].parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("item count is not a positive integer: {:?}", fields[0]),
            })?;
            let capacity: f64 = fields[1].parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("capacity is not a number: {:?}", fields[1]),
            })?;
            if n == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "item count must be at least 1".into(),
                });
            }
            if !(capacity > 0.0) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("capacity must be positive, got {capacity}"),
                });
            }
            header = Some((n, capacity));
            continue;
        }

        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected item line `<w> <v>`, got {} fields", fields.len()),
            });
        }
        let w: f64 = fields[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("weight is not a number: {:?}", fields[0]),
        })?;
        let v: f64 = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("value is not a number: {:?}", fields[1]),
        })?;
        if !(w > 0.0) || !(v > 0.0) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("weight and value must be positive, got w={w} v={v}"),
            });
        }
        items.push((w, v));
    }

    let (n, capacity) = header.ok_or(Error::Parse {
        line: 1,
        message: "empty instance file".into(),
    })?;
    if items.len() != n {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("header declares {n} items but {} item lines found", items.len()),
        });
    }

    let (weights, values): (Vec<f64>, Vec<f64>) = items.into_iter().unzip();
    let mut inst = Instance::new(weights, values, capacity)?;
    if let Some(opt) = optimum {
        inst = inst.with_known_optimum(opt);
    }
    if let Some(name) = name {
        inst = inst.with_name(name);
    }
    Ok(inst)
}

/// Write an instance in the file format. Reals round-trip at full precision.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    if let Some(name) = inst.name() {
        out.push_str(&format!("# name {name}\n"));
    }
    out.push_str(&format!("{} {}\n", inst.n(), inst.capacity()));
    for (w, v) in inst.weights().iter().zip(inst.values()) {
        out.push_str(&format!("{w} {v}\n"));
    }
    if let Some(opt) = inst.known_optimum() {
        out.push_str(&format!("# optimum {opt}\n"));
    }
    out
}
