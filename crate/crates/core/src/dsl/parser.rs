use super::diag::Diagnostic;
use super::lexer::{tokenize_lenient, BenchSource, Keyword, Token, TokenKind};
use crate::optics::{ArgValue, BenchGraph, ElementRegistry, Link, NodeDecl, PortRef};

/// Parses a token stream into an unvalidated graph. Statements that fail to
/// parse are skipped up to the next line and reported; the rest of the file
/// is still read.
pub fn parse(tokens: &[Token]) -> (BenchGraph, Vec<Diagnostic>) {
    parse_with(tokens, ElementRegistry::standard())
}

pub fn parse_with(tokens: &[Token], registry: &ElementRegistry) -> (BenchGraph, Vec<Diagnostic>) {
    let mut p = Parser { tokens, pos: 0, registry, graph: BenchGraph::default(), diags: Vec::new() };
    p.file();
    (p.graph, p.diags)
}

/// Tokenizes and parses in one step, keeping lexical and syntax diagnostics
/// together in source order.
pub fn parse_source(src: &BenchSource) -> (BenchGraph, Vec<Diagnostic>) {
    let (tokens, mut diags) = tokenize_lenient(&src.text);
    let (graph, more) = parse(&tokens);
    diags.extend(more);
    diags.sort_by_key(|d| (d.line, d.column));
    (graph, diags)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    registry: &'a ElementRegistry,
    graph: BenchGraph,
    diags: Vec<Diagnostic>,
}

type Step<T> = Result<T, Diagnostic>;

impl Parser<'_> {
    fn peek(&self) -> &Token {
        // the lexer always ends the stream with Eof
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::error(t.line, t.column, format!("expected {what}, found {}", t.kind))
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Step<Token> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn ident(&mut self, what: &str) -> Step<(String, Token)> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn number(&mut self, what: &str) -> Step<f64> {
        match self.peek().kind {
            TokenKind::Number(x) => {
                self.bump();
                Ok(x)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn port_ref(&mut self) -> Step<PortRef> {
        let (node, _) = self.ident("node name")?;
        self.expect(TokenKind::Dot, "`.`")?;
        let (port, _) = self.ident("port name")?;
        Ok(PortRef::new(node, port))
    }

    /// Skips the rest of `line`.
    fn recover(&mut self, line: usize) {
        while self.peek().kind != TokenKind::Eof && self.peek().line == line {
            self.bump();
        }
    }

    fn file(&mut self) {
        let first = self.peek().clone();
        if first.kind == TokenKind::Keyword(Keyword::Bench) {
            self.bump();
            match self.ident("bench name") {
                Ok((name, _)) => {
                    self.graph.name = name;
                    self.graph.lines.header = Some(first.line);
                    self.end_of_statement(first.line);
                }
                Err(d) => {
                    self.diags.push(d);
                    self.recover(first.line);
                }
            }
        } else {
            self.diags.push(Diagnostic::error(first.line, first.column, "expected `bench <name>` header"));
        }
        while self.peek().kind != TokenKind::Eof {
            let start = self.peek().line;
            if let Err(d) = self.statement() {
                self.diags.push(d);
                self.recover(start);
            } else {
                self.end_of_statement(start);
            }
        }
    }

    fn end_of_statement(&mut self, line: usize) {
        let t = self.peek();
        if t.kind != TokenKind::Eof && t.line == line {
            self.diags.push(Diagnostic::error(t.line, t.column, format!("unexpected {} after statement", t.kind)));
            self.recover(line);
        }
    }

    fn statement(&mut self) -> Step<()> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Keyword(Keyword::Param) => self.param_stmt(),
            TokenKind::Keyword(Keyword::Node) => self.node_stmt(),
            TokenKind::Keyword(Keyword::Link) => self.link_stmt(),
            TokenKind::Keyword(Keyword::Detector) => self.detector_stmt(),
            TokenKind::Keyword(Keyword::Bench) => Err(Diagnostic::error(t.line, t.column, "duplicate `bench` header")),
            _ => Err(self.unexpected("`param`, `node`, `link` or `detector`")),
        }
    }

    fn param_stmt(&mut self) -> Step<()> {
        let kw = self.bump();
        let (name, name_tok) = self.ident("param name")?;
        self.expect(TokenKind::Eq, "`=`")?;
        let value = self.number("number")?;
        if self.graph.params.contains_key(&name) {
            return Err(Diagnostic::error(name_tok.line, name_tok.column, format!("duplicate param `{name}`")));
        }
        self.graph.params.insert(name.clone(), value);
        self.graph.lines.params.insert(name, kw.line);
        Ok(())
    }

    fn node_stmt(&mut self) -> Step<()> {
        let kw = self.bump();
        let (name, name_tok) = self.ident("node name")?;
        self.expect(TokenKind::Colon, "`:`")?;
        let (kind, kind_tok) = self.ident("element kind")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let mut decl = NodeDecl::new(kind.clone());
        if self.peek().kind != TokenKind::RParen {
            loop {
                let (arg, arg_tok) = self.ident("argument name")?;
                self.expect(TokenKind::Eq, "`=`")?;
                let value = match &self.peek().kind {
                    TokenKind::Number(x) => ArgValue::Number(*x),
                    TokenKind::Ident(p) => ArgValue::Param(p.clone()),
                    _ => return Err(self.unexpected("number or param name")),
                };
                self.bump();
                if decl.args.insert(arg.clone(), value).is_some() {
                    return Err(Diagnostic::error(arg_tok.line, arg_tok.column, format!("duplicate argument `{arg}`")));
                }
                if self.peek().kind == TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen, "`)`")?;
        if self.registry.spec(&kind).is_none() {
            return Err(Diagnostic::error(kind_tok.line, kind_tok.column, format!("unknown element kind `{kind}`")));
        }
        if self.graph.nodes.contains_key(&name) {
            return Err(Diagnostic::error(name_tok.line, name_tok.column, format!("duplicate node `{name}`")));
        }
        self.graph.nodes.insert(name.clone(), decl);
        self.graph.lines.nodes.insert(name, kw.line);
        Ok(())
    }

    fn link_stmt(&mut self) -> Step<()> {
        let kw = self.bump();
        let from = self.port_ref()?;
        self.expect(TokenKind::Arrow, "`->`")?;
        let to = self.port_ref()?;
        self.graph.links.push(Link { from, to });
        self.graph.lines.links.push(kw.line);
        Ok(())
    }

    fn detector_stmt(&mut self) -> Step<()> {
        let kw = self.bump();
        let (name, name_tok) = self.ident("detector name")?;
        self.expect(TokenKind::Keyword(Keyword::On), "`on`")?;
        let port = self.port_ref()?;
        if self.graph.detectors.contains_key(&name) {
            return Err(Diagnostic::error(name_tok.line, name_tok.column, format!("duplicate detector `{name}`")));
        }
        self.graph.detectors.insert(name.clone(), port);
        self.graph.lines.detectors.insert(name, kw.line);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_text(text: &str) -> (BenchGraph, Vec<Diagnostic>) {
        parse_source(&BenchSource::new("t", text))
    }

    #[test]
    fn header_only_is_empty_graph() {
        let (g, d) = parse_text("bench empty\n");
        assert!(d.is_empty());
        assert_eq!(g.name, "empty");
        assert!(g.nodes.is_empty() && g.links.is_empty() && g.detectors.is_empty() && g.params.is_empty());
    }

    #[test]
    fn self_loop_parses() {
        let (g, d) = parse_text("bench x\nnode A : mirror()\nlink A.out -> A.in\n");
        assert!(d.is_empty(), "{d:?}");
        assert_eq!(g.links.len(), 1);
        assert_eq!(g.lines.links, vec![3]);
    }

    #[test]
    fn statements_and_kwargs() {
        let (g, d) = parse_text(
            "bench x\nparam xi = 30\nnode P : polarizer(angle_param=xi)\nnode D : delay(slots=1, zeta_rad=0.5)\ndetector s on P.out\n",
        );
        assert!(d.is_empty(), "{d:?}");
        assert_eq!(g.params["xi"], 30.0);
        assert_eq!(g.nodes["P"].args["angle_param"], ArgValue::Param("xi".into()));
        assert_eq!(g.nodes["D"].args["zeta_rad"], ArgValue::Number(0.5));
        assert_eq!(g.detectors["s"], PortRef::new("P", "out"));
    }

    #[test]
    fn errors_carry_lines_and_recovery_continues() {
        let (g, d) = parse_text("bench x\nnode A : warp()\nnode B : mirror()\nnode B : mirror()\nlink B.out A.in\n");
        let lines: Vec<usize> = d.iter().map(|d| d.line).collect();
        assert_eq!(lines, vec![2, 4, 5]);
        assert!(d[0].message.contains("unknown element kind"));
        assert!(d[1].message.contains("duplicate node"));
        assert!(g.nodes.contains_key("B"));
    }

    #[test]
    fn missing_header_and_trailing_tokens() {
        let (_, d) = parse_text("node A : mirror() extra\n");
        assert_eq!(d.len(), 2);
        assert!(d[0].message.contains("header"));
        assert_eq!((d[1].line, d[1].column), (1, 19));
    }

    #[test]
    fn truncated_input_reports_inside_source() {
        for text in ["", "bench", "bench x\nnode", "bench x\nlink A.out ->", "bench x\nnode A : hwp(angle_deg="] {
            let (_, d) = parse_text(text);
            assert!(!d.is_empty(), "{text:?}");
            let n_lines = text.lines().count().max(1);
            assert!(d.iter().all(|d| d.line >= 1 && d.line <= n_lines), "{text:?}: {d:?}");
        }
    }
}
