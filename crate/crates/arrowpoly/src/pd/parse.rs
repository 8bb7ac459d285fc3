//! Text form of PD codes: `PD[Xm[1,2,3,4], Xp[4,6,3,1], P[5,5]]`.

use super::{Arc, Node, PdCode, PdError};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PdError> {
        Err(PdError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        loop {
            while self
                .text
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_whitespace())
            {
                self.pos += 1;
            }
            // comments run to end of line
            if self.text.get(self.pos) != Some(&b'#') {
                return;
            }
            while self.text.get(self.pos).is_some_and(|&b| b != b'\n') {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, want: u8) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: u8) -> Result<(), PdError> {
        if self.eat(want) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", want as char))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos]).unwrap()
    }

    fn arc(&mut self) -> Result<Arc, PdError> {
        self.skip_ws();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an arc id");
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        let value: Arc = digits
            .parse()
            .map_err(|_| PdError::Parse {
                pos: start,
                msg: format!("arc id {digits} out of range"),
            })?;
        if value == 0 {
            return Err(PdError::Parse {
                pos: start,
                msg: "arc ids start at 1".into(),
            });
        }
        Ok(value)
    }

    fn arc_list(&mut self, want: usize) -> Result<Vec<Arc>, PdError> {
        self.expect(b'[')?;
        let mut arcs = vec![self.arc()?];
        while self.eat(b',') {
            arcs.push(self.arc()?);
        }
        self.expect(b']')?;
        if arcs.len() != want {
            return self.err(format!("expected {want} arcs, got {}", arcs.len()));
        }
        Ok(arcs)
    }

    fn node(&mut self) -> Result<Node, PdError> {
        self.skip_ws();
        let at = self.pos;
        let head = self.word();
        match head {
            "P" => {
                let a = self.arc_list(2)?;
                Ok(Node::P(a[0], a[1]))
            }
            "Xp" => {
                let a = self.arc_list(4)?;
                Ok(Node::Xp(a[0], a[1], a[2], a[3]))
            }
            "Xm" => {
                let a = self.arc_list(4)?;
                Ok(Node::Xm(a[0], a[1], a[2], a[3]))
            }
            _ => Err(PdError::Parse {
                pos: at,
                msg: format!("unknown node kind '{head}' (want P, Xp or Xm)"),
            }),
        }
    }
}

/// Parse and validate a diagram. Labels are not part of the text form.
pub fn parse_pd(text: &str) -> Result<PdCode, PdError> {
    let mut cur = Cursor::new(text);
    if cur.word() != "PD" {
        return Err(PdError::Parse {
            pos: 0,
            msg: "expected 'PD['".into(),
        });
    }
    cur.expect(b'[')?;
    let mut nodes = vec![cur.node()?];
    while cur.eat(b',') {
        nodes.push(cur.node()?);
    }
    cur.expect(b']')?;
    if cur.peek().is_some() {
        return cur.err("trailing input after ']'");
    }
    let pd = PdCode::new(nodes);
    pd.validate()?;
    Ok(pd)
}

/// Parse a component label file: one `component = slot` pair per line,
/// 1-based component indices, `#` comments allowed.
pub fn parse_label_lines(text: &str) -> Result<Vec<(usize, u32)>, PdError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let pos = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = body.split_once('=') else {
            return Err(PdError::Parse {
                pos,
                msg: "expected 'component = slot'".into(),
            });
        };
        let parse = |s: &str, what: &str| -> Result<u32, PdError> {
            s.trim().parse().map_err(|_| PdError::Parse {
                pos,
                msg: format!("bad {what} '{}'", s.trim()),
            })
        };
        let comp = parse(lhs, "component index")?;
        let slot = parse(rhs, "label slot")?;
        if comp == 0 || slot == 0 {
            return Err(PdError::Parse {
                pos,
                msg: "component indices and slots start at 1".into(),
            });
        }
        out.push((comp as usize - 1, slot));
    }
    Ok(out)
}
