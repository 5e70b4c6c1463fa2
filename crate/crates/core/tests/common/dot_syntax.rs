//! Minimal DOT language checker: tokenizes and parses the graph grammar
//! (without subgraphs or ports) and counts node and edge statements.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
    Arrow,
    Line,
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '{' => { out.push(Tok::LBrace); i += 1 }
            '}' => { out.push(Tok::RBrace); i += 1 }
            '[' => { out.push(Tok::LBracket); i += 1 }
            ']' => { out.push(Tok::RBracket); i += 1 }
            ';' => { out.push(Tok::Semi); i += 1 }
            ',' => { out.push(Tok::Comma); i += 1 }
            '=' => { out.push(Tok::Eq); i += 1 }
            '-' if chars.get(i + 1) == Some(&'>') => { out.push(Tok::Arrow); i += 2 }
            '-' if chars.get(i + 1) == Some(&'-') => { out.push(Tok::Line); i += 2 }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('\\') => {
                            if let Some(n) = chars.get(i + 1) {
                                s.push('\\');
                                s.push(*n);
                            }
                            i += 2;
                        }
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(ch) => {
                            s.push(*ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Id(s));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
pub struct DotSummary {
    pub directed: bool,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub filled_yellow: Vec<String>,
}

struct P {
    toks: Vec<Tok>,
    pos: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(x) if x == t => Ok(()),
            other => Err(format!("expected {t:?}, found {other:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            other => Err(format!("expected ID, found {other:?}")),
        }
    }

    fn attr_list(&mut self) -> Result<Vec<(String, String)>, String> {
        let mut attrs = Vec::new();
        while self.peek() == Some(&Tok::LBracket) {
            self.next();
            while self.peek() != Some(&Tok::RBracket) {
                let k = self.id()?;
                self.expect(Tok::Eq)?;
                let v = self.id()?;
                attrs.push((k, v));
                if matches!(self.peek(), Some(Tok::Comma) | Some(Tok::Semi)) {
                    self.next();
                }
            }
            self.expect(Tok::RBracket)?;
        }
        Ok(attrs)
    }
}

pub fn validate(text: &str) -> Result<DotSummary, String> {
    let mut p = P { toks: lex(text)?, pos: 0 };
    let mut summary = DotSummary::default();
    let mut kw = p.id()?;
    if kw == "strict" {
        kw = p.id()?;
    }
    summary.directed = match kw.as_str() {
        "digraph" => true,
        "graph" => false,
        other => return Err(format!("expected graph kind, found {other}")),
    };
    if let Some(Tok::Id(_)) = p.peek() {
        p.next();
    }
    p.expect(Tok::LBrace)?;
    loop {
        match p.peek() {
            Some(Tok::RBrace) => {
                p.next();
                break;
            }
            Some(Tok::Semi) => {
                p.next();
            }
            Some(Tok::Id(_)) => {
                let first = p.id()?;
                if matches!(first.as_str(), "graph" | "node" | "edge") && p.peek() == Some(&Tok::LBracket) {
                    p.attr_list()?;
                    continue;
                }
                match p.peek() {
                    Some(Tok::Eq) => {
                        p.next();
                        p.id()?;
                    }
                    Some(Tok::Arrow) | Some(Tok::Line) => {
                        let mut from = first;
                        while let Some(op) = p.peek().cloned() {
                            if op != Tok::Arrow && op != Tok::Line {
                                break;
                            }
                            if (op == Tok::Arrow) != summary.directed {
                                return Err("edge operator does not match graph kind".into());
                            }
                            p.next();
                            let to = p.id()?;
                            summary.edges.push((from, to.clone()));
                            from = to;
                        }
                        p.attr_list()?;
                    }
                    _ => {
                        let attrs = p.attr_list()?;
                        if attrs.iter().any(|(k, v)| k == "fillcolor" && v == "yellow")
                            && attrs.iter().any(|(k, v)| k == "style" && v == "filled")
                        {
                            summary.filled_yellow.push(first.clone());
                        }
                        summary.nodes.push(first);
                    }
                }
            }
            other => return Err(format!("unexpected token {other:?}")),
        }
    }
    if p.pos != p.toks.len() {
        return Err("trailing tokens after graph".into());
    }
    for (a, b) in &summary.edges {
        if !summary.nodes.contains(a) || !summary.nodes.contains(b) {
            return Err(format!("edge {a} -> {b} references an undeclared node"));
        }
    }
    Ok(summary)
}

#[test]
fn rejects_malformed() {
    assert!(validate("digraph { a -> }").is_err());
    assert!(validate("digraph { a [label=\"x] }").is_err());
    assert!(validate("digraph { a; b; a -- b }").is_err());
    assert!(validate("digraph \"g\" { a [label=\"x\\ny\"]; b; a -> b [label=\"∅\"]; }").is_ok());
}
