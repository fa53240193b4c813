use super::{Span, Token, TokenShape};

/// Marks that may join two alphanumeric runs into a single word.
fn joins_word(mark: char, prev: char, next: char) -> bool {
    let allowed = match mark {
        '-' | '\'' | '’' => true,
        // domains and thousands separators: "seg-social.es", "1.250"
        '.' => true,
        // decimal comma: "1.250,75"
        ',' => prev.is_ascii_digit() && next.is_ascii_digit(),
        _ => false,
    };
    allowed && prev.is_alphanumeric() && next.is_alphanumeric()
}

fn shape_of(surface: &str) -> TokenShape {
    let letters: Vec<char> = surface.chars().filter(|c| c.is_alphabetic()).collect();
    if letters.is_empty() {
        return TokenShape::NonAlpha;
    }
    let upper = letters.iter().filter(|c| c.is_uppercase()).count();
    if upper == 0 {
        TokenShape::Lowercase
    } else if letters[0].is_uppercase() && upper == 1 {
        TokenShape::Capitalized
    } else if upper == letters.len() {
        TokenShape::AllCaps
    } else {
        TokenShape::Mixed
    }
}

fn make_token(chars: &[char], start: usize, end: usize) -> Token {
    let surface: String = chars[start..end].iter().collect();
    let is_word = surface.chars().any(char::is_alphanumeric);
    Token {
        lower: surface.to_lowercase(),
        shape: shape_of(&surface),
        surface,
        span: Span::new(start, end),
        is_word,
    }
}

/// Splits text into word tokens (maximal runs of letters and digits, joined
/// by intra-word marks) and punctuation tokens (runs of one repeated
/// character). Spans are char offsets into `text`.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_alphanumeric() {
            i += 1;
            while i < chars.len() {
                if chars[i].is_alphanumeric() {
                    i += 1;
                } else if i + 1 < chars.len() && joins_word(chars[i], chars[i - 1], chars[i + 1]) {
                    i += 2;
                } else {
                    break;
                }
            }
        } else {
            while i < chars.len() && chars[i] == c {
                i += 1;
            }
        }
        tokens.push(make_token(&chars, start, i));
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn sentence_from_single_sentence_paragraph() {
        let tokens = tokenize(
            "La Seguridad Social limita en todo caso el acceso y utilización de los datos personales.",
        );
        assert_eq!(tokens.iter().filter(|t| t.is_word).count(), 15);
        assert_eq!(tokens.iter().filter(|t| !t.is_word).count(), 1);
    }

    #[test]
    fn slash_splits_and_or() {
        assert_eq!(surfaces("y/o"), ["y", "/", "o"]);
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn intra_word_marks() {
        assert_eq!(surfaces("www.seg-social.es"), ["www.seg-social.es"]);
        assert_eq!(surfaces("1.250,75 euros"), ["1.250,75", "euros"]);
        assert_eq!(surfaces("rojo, azul"), ["rojo", ",", "azul"]);
        assert_eq!(surfaces("(INSS)."), ["(", "INSS", ")", "."]);
        assert_eq!(surfaces("Espere..."), ["Espere", "..."]);
        assert_eq!(surfaces("75%"), ["75", "%"]);
    }

    #[test]
    fn shapes() {
        let shape = |s: &str| tokenize(s)[0].shape;
        assert_eq!(shape("casa"), TokenShape::Lowercase);
        assert_eq!(shape("Casa"), TokenShape::Capitalized);
        assert_eq!(shape("INSS"), TokenShape::AllCaps);
        assert_eq!(shape("iPhone"), TokenShape::Mixed);
        assert_eq!(shape("2023"), TokenShape::NonAlpha);
        assert_eq!(shape("A"), TokenShape::Capitalized);
        assert_eq!(shape("RENOVACIÓN"), TokenShape::AllCaps);
    }

    #[test]
    fn spans_are_char_offsets() {
        let text = "según él";
        let tokens = tokenize(text);
        assert_eq!(tokens[1].span, Span::new(6, 8));
        let chars: Vec<char> = text.chars().collect();
        for t in tokens {
            let s: String = chars[t.span.start..t.span.end].iter().collect();
            assert_eq!(s, t.surface);
        }
    }
}
