use super::{dt_to_pd, KnotDiagram, KnotError};

/// Parses a PD code such as `PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]`.
///
/// Also accepted: `X[...]` crossings, bare `[[1,5,2,4],...]` lists, and any
/// whitespace between tokens. The crossing `X(i,j,k,l)` lists its four arcs
/// counterclockwise starting from the incoming under-arc.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, KnotError> {
    let crossings = Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .pd()?;
    KnotDiagram::from_crossings(crossings)
}

/// Parses a PD code, or a DT code written `DT[4,6,2]`. DT input fixes the knot only up to mirror image.
pub fn parse_knot_code(text: &str) -> Result<KnotDiagram, KnotError> {
    if text.trim_start().starts_with("DT") {
        let code = Parser {
            src: text.as_bytes(),
            pos: 0,
        }
        .dt()?;
        dt_to_pd(&code)
    } else {
        parse_pd(text)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, KnotError> {
        Err(KnotError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn open(&mut self) -> Result<u8, KnotError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                Ok(b']')
            }
            Some(b'(') => {
                self.pos += 1;
                Ok(b')')
            }
            _ => self.err("expected '[' or '('"),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), KnotError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64, KnotError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected integer")
            }
        }
    }

    fn pd(mut self) -> Result<Vec<[u32; 4]>, KnotError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"PD") {
            self.pos += 2;
        }
        let close = self.open()?;
        let mut crossings = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
        } else {
            loop {
                crossings.push(self.crossing()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(c) if c == close => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or closing bracket"),
                }
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(crossings)
    }

    fn dt(mut self) -> Result<Vec<i64>, KnotError> {
        self.skip_ws();
        self.pos += 2;
        let close = self.open()?;
        let mut code = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
        } else {
            loop {
                code.push(self.int()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(c) if c == close => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or closing bracket"),
                }
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(code)
    }

    fn crossing(&mut self) -> Result<[u32; 4], KnotError> {
        if self.peek() == Some(b'X') {
            self.pos += 1;
        }
        let close = self.open()?;
        let mut labels = [0u32; 4];
        for (k, slot) in labels.iter_mut().enumerate() {
            if k > 0 {
                self.expect(b',')?;
            }
            let v = self.int()?;
            if v < 1 || v > u32::MAX as i64 {
                return self.err(format!("arc label {v} must be a positive integer"));
            }
            *slot = v as u32;
        }
        self.expect(close)?;
        Ok(labels)
    }
}
