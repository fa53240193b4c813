use super::{Ctx, Diagnostic, Profile, RuleId, Severity};
use crate::lexicons::Table;
use crate::morphology::nominal::{expansion_after, expansion_before};
use crate::morphology::{
    find_nominalizations, find_passives, find_person_markers, imperfect_subjunctive, is_acronym_candidate,
    is_function_word, is_gerund, is_participle, tag_verb_form, PassiveKind, PersonKind, PersonMarker,
    VerbFormKind,
};
use crate::textmodel::{Block, Sentence, Token};

/// Auxiliaries whose gerund complement forms a verbal periphrasis.
const PERIPHRASIS_PREFIXES: &[&str] = &["est", "sigu", "segu", "continu", "continú", "llev"];
const IR_FORMS: &[&str] = &[
    "voy", "vas", "va", "vamos", "van", "iba", "ibas", "íbamos", "iban", "irá", "irán", "iría", "irían",
    "vaya", "vayan", "fue", "fueron",
];
const DEMONSTRATIVES: &[&str] = &["este", "esta", "esto", "estos", "estas"];

fn is_periphrasis_auxiliary(lower: &str) -> bool {
    !DEMONSTRATIVES.contains(&lower)
        && (IR_FORMS.contains(&lower) || PERIPHRASIS_PREFIXES.iter().any(|p| lower.starts_with(p)))
}

fn passive_flagged(kind: PassiveKind, profile: Profile) -> bool {
    match profile {
        Profile::Artext => kind == PassiveKind::Periphrastic,
        Profile::Lengclaro => kind != PassiveKind::Reflexive,
    }
}

/// Sentence-initial absolute participle, optionally after "Una vez".
fn absolute_participle(ctx: &Ctx, words: &[&Token]) -> Option<usize> {
    let at = match words {
        [una, vez, ..] if una.lower == "una" && vez.lower == "vez" => 2,
        _ => 0,
    };
    // only "Una vez" can precede, so no auxiliary ever sits before it
    is_participle(&words.get(at)?.lower, ctx.lex).then_some(at)
}

fn sentence_rules(ctx: &Ctx, sentence: &Sentence, out: &mut Vec<Diagnostic>) {
    let t = &ctx.config.thresholds;
    let words: Vec<&Token> = sentence.words().collect();

    if ctx.on(RuleId::B1) {
        for m in find_passives(sentence, ctx.lex) {
            if passive_flagged(m.kind, ctx.profile()) {
                out.push(ctx.diag(
                    RuleId::B1,
                    Severity::Warn,
                    m.span,
                    format!("Passive voice ({}); prefer the active voice", m.kind.describe()),
                ));
            }
        }
    }

    for (i, word) in words.iter().enumerate() {
        let prev = i.checked_sub(1).map(|p| words[p]);
        if ctx.on(RuleId::B2) && !is_function_word(&word.lower) && is_gerund(&word.lower, ctx.lex) {
            let exempt = ctx.profile() == Profile::Lengclaro
                && prev.is_some_and(|p| is_periphrasis_auxiliary(&p.lower));
            if !exempt {
                out.push(ctx.diag(
                    RuleId::B2,
                    Severity::Warn,
                    word.span,
                    format!("Gerund \"{}\"; rephrase with a conjugated verb", word.surface),
                ));
            }
        }
        if ctx.on(RuleId::B3) && ctx.profile() == Profile::Artext && is_participle(&word.lower, ctx.lex) {
            out.push(ctx.diag(
                RuleId::B3,
                Severity::Warn,
                word.span,
                format!("Participle \"{}\"; consider a conjugated verb", word.surface),
            ));
        }
        if ctx.on(RuleId::B4) && tag_verb_form(word, prev, ctx.lex).kind == VerbFormKind::FutureSubjunctive {
            let mut d = ctx.diag(
                RuleId::B4,
                Severity::Warn,
                word.span,
                format!("\"{}\" is an archaic future subjunctive; use the imperfect subjunctive", word.surface),
            );
            d.suggestions = imperfect_subjunctive(&word.surface, ctx.lex);
            out.push(d);
        }
    }

    if ctx.on(RuleId::B3) && ctx.profile() == Profile::Lengclaro {
        if let Some(at) = absolute_participle(ctx, &words) {
            out.push(ctx.diag(
                RuleId::B3,
                Severity::Warn,
                words[at].span,
                format!(
                    "Absolute participle construction \"{}\"; use a clause with a conjugated verb and a subject",
                    words[at].surface
                ),
            ));
        }
    }

    if ctx.on(RuleId::B6) {
        for n in find_nominalizations(sentence, ctx.lex) {
            if ctx.profile() == Profile::Lengclaro && !n.has_de_complement {
                continue;
            }
            out.push(ctx.diag(
                RuleId::B6,
                Severity::Warn,
                n.span,
                format!("Nominalization \"{}\"; consider the corresponding verb", n.surface),
            ));
        }
    }

    if ctx.on(RuleId::B7) {
        let negations = ctx.lex.table(Table::NegationMarkers);
        let count = words.iter().filter(|w| negations.contains(&w.lower)).count();
        if count >= t.negation_min_count {
            out.push(ctx.diag(
                RuleId::B7,
                Severity::Warn,
                sentence.span,
                format!("{count} negations in one sentence; express it affirmatively"),
            ));
        }
    }

    if ctx.on(RuleId::B9) {
        parentheticals(ctx, sentence, out);
    }
}

fn is_acronym_introduction(ctx: &Ctx, tokens: &[Token], open: usize, close: usize) -> bool {
    let inner = &tokens[open + 1..close];
    if let [single] = inner {
        if is_acronym_candidate(single, ctx.lex) && expansion_before(tokens, open + 1, &single.surface).is_some() {
            return true;
        }
    }
    open > 0
        && is_acronym_candidate(&tokens[open - 1], ctx.lex)
        && expansion_after(tokens, open - 1, &tokens[open - 1].surface).is_some()
}

fn parentheticals(ctx: &Ctx, sentence: &Sentence, out: &mut Vec<Diagnostic>) {
    let min_words = ctx.config.thresholds.parenthetical_min_words;
    let tokens = &sentence.tokens;
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i].surface != "(" {
            i += 1;
            continue;
        }
        let mut depth = 0usize;
        let close = (i..tokens.len()).find(|&j| {
            match tokens[j].surface.as_str() {
                "(" => depth += 1,
                ")" => depth -= 1,
                _ => {}
            }
            depth == 0
        });
        let inner_end = close.unwrap_or(tokens.len());
        let words = tokens[i + 1..inner_end].iter().filter(|t| t.is_word).count();
        if words >= min_words && !close.is_some_and(|c| is_acronym_introduction(ctx, tokens, i, c)) {
            let last = close.unwrap_or(tokens.len() - 1);
            let span = tokens[i].span.cover(tokens[last].span);
            let (severity, message) = match close {
                Some(_) => (Severity::Warn, "Parenthetical remark; move it to a separate sentence or to the end"),
                None => (Severity::Info, "Unclosed parenthesis; the remark runs to the end of the sentence"),
            };
            let mut d = ctx.diag(RuleId::B9, severity, span, message);
            d.suggestions.push("Move the remark to a separate sentence".to_string());
            out.push(d);
        }
        i = close.map_or(tokens.len(), |c| c + 1);
    }
}

pub(super) fn block(ctx: &Ctx, block: &Block, out: &mut Vec<Diagnostic>) {
    for sentence in &block.sentences {
        sentence_rules(ctx, sentence, out);
    }
}

/// Flags the minority of two competing marker classes; `b` loses ties.
fn flag_minority(
    ctx: &Ctx,
    id: RuleId,
    markers: &[PersonMarker],
    a: PersonKind,
    b: PersonKind,
    message: &str,
    out: &mut Vec<Diagnostic>,
) {
    let count = |k| markers.iter().filter(|m| m.kind == k).count();
    let (na, nb) = (count(a), count(b));
    if na == 0 || nb == 0 {
        return;
    }
    let minority = if na < nb { a } else { b };
    for m in markers.iter().filter(|m| m.kind == minority) {
        out.push(ctx.diag(id, Severity::Warn, m.span, format!("{message} (\"{}\")", m.surface)));
    }
}

pub(super) fn document(ctx: &Ctx, out: &mut Vec<Diagnostic>) {
    if !ctx.on(RuleId::B5) && !ctx.on(RuleId::B8) {
        return;
    }
    let markers: Vec<PersonMarker> =
        ctx.doc.sentences().flat_map(|(_, s)| find_person_markers(s, ctx.lex)).collect();
    if ctx.on(RuleId::B5) {
        flag_minority(
            ctx,
            RuleId::B5,
            &markers,
            PersonKind::FirstPlural,
            PersonKind::FirstSingular,
            "The sender is referred to in both first-person singular and plural",
            out,
        );
    }
    if ctx.on(RuleId::B8) {
        flag_minority(
            ctx,
            RuleId::B8,
            &markers,
            PersonKind::Informal,
            PersonKind::Formal,
            "The reader is addressed both as tú and as usted",
            out,
        );
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::{lint, Diagnostic, RuleConfig, RuleId};
    use crate::textmodel::parse_plain;
    use crate::{LexiconSet, Profile, Severity};

    fn run(text: &str, profile: Profile, id: RuleId) -> Vec<Diagnostic> {
        let lex = LexiconSet::embedded();
        let doc = parse_plain(text);
        lint(&doc, &RuleConfig::for_profile(profile), &lex).into_iter().filter(|d| d.rule_id == id).collect()
    }

    fn texts(text: &str, profile: Profile, id: RuleId) -> Vec<String> {
        let doc = parse_plain(text);
        run(text, profile, id).iter().map(|d| doc.slice(d.span).to_string()).collect()
    }

    #[test]
    fn b1_modes() {
        let text = "La fe de vida deberá ser presentada en la oficina, información que ha sido comunicada a los pensionistas.";
        assert_eq!(texts(text, Profile::Lengclaro, RuleId::B1), ["deberá ser presentada", "ha sido comunicada"]);
        assert_eq!(texts(text, Profile::Artext, RuleId::B1), ["ha sido comunicada"]);
        let agent = "El trámite se realizará por la entidad gestora.";
        assert_eq!(texts(agent, Profile::Lengclaro, RuleId::B1), ["se realizará por la entidad gestora"]);
        assert!(texts(agent, Profile::Artext, RuleId::B1).is_empty());
    }

    #[test]
    fn b2_periphrasis_exemption() {
        assert_eq!(texts("Su solicitud está procesando los datos.", Profile::Artext, RuleId::B2), ["procesando"]);
        assert!(texts("Su solicitud está procesando los datos.", Profile::Lengclaro, RuleId::B2).is_empty());
        assert_eq!(
            texts("Quienes, no hallándose impedidos, lo soliciten.", Profile::Lengclaro, RuleId::B2),
            ["hallándose"]
        );
    }

    #[test]
    fn b3_modes() {
        let text = "Finalizado el proceso, los documentos presentados han sido revisados.";
        assert_eq!(texts(text, Profile::Artext, RuleId::B3), ["Finalizado", "presentados", "revisados"]);
        assert_eq!(texts(text, Profile::Lengclaro, RuleId::B3), ["Finalizado"]);
        assert_eq!(texts("Una vez identificado, podrás obtenerlo.", Profile::Lengclaro, RuleId::B3), ["identificado"]);
        assert!(texts("Es un requisito.", Profile::Artext, RuleId::B3).is_empty());
    }

    #[test]
    fn b4_suggestions() {
        let d = run("Cuando uno de ellos solicitare el ingreso mínimo vital.", Profile::Artext, RuleId::B4);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].suggestions[0], "solicitase");
        assert_eq!(run("Si fuere necesario, se avisará.", Profile::Lengclaro, RuleId::B4)[0].suggestions[0], "fuese");
        assert!(run("Cuando uno de ellos solicitase el IMV.", Profile::Artext, RuleId::B4).is_empty());
    }

    #[test]
    fn b5_and_b8_minorities() {
        let text = "Nosotros ofrecemos el servicio. Nuestras oficinas abren hoy. Yo confirmo los datos.";
        assert_eq!(texts(text, Profile::Artext, RuleId::B5), ["Yo"]);
        let mixed = "Los datos que introduzcas deben coincidir. Cuando usted finalice, podrá descargarlo.";
        assert_eq!(texts(mixed, Profile::Lengclaro, RuleId::B8), ["usted"]);
        assert!(run("Usted puede solicitarlo. Si usted lo desea, llame.", Profile::Lengclaro, RuleId::B8).is_empty());
    }

    #[test]
    fn b6_modes() {
        let text = "Se acreditará mediante la inscripción en el registro. La utilización de este servicio es gratuita.";
        assert_eq!(texts(text, Profile::Artext, RuleId::B6), ["inscripción", "utilización"]);
        assert_eq!(texts(text, Profile::Lengclaro, RuleId::B6), ["utilización"]);
        assert!(run("Tiene autorización de residencia y cobra la prestación.", Profile::Artext, RuleId::B6).is_empty());
    }

    #[test]
    fn b7_threshold() {
        assert_eq!(run("Si no son coincidentes, no será posible.", Profile::Artext, RuleId::B7).len(), 1);
        assert!(run("No será posible.", Profile::Artext, RuleId::B7).is_empty());
        assert_eq!(run("Ni cobra ni trabaja sin permiso.", Profile::Artext, RuleId::B7).len(), 1);
    }

    #[test]
    fn b9_parentheticals() {
        let text = "Carencia de rentas (rendimientos inferiores al 75% del salario mínimo interprofesional) de los miembros.";
        assert_eq!(run(text, Profile::Lengclaro, RuleId::B9).len(), 1);
        let acr = "Acuda al Instituto Nacional de la Seguridad Social (INSS). El INSS (Instituto Nacional de la Seguridad Social) responde.";
        assert!(run(acr, Profile::Lengclaro, RuleId::B9).is_empty());
        assert!(run("Adjunte el archivo (formato PDF).", Profile::Lengclaro, RuleId::B9).is_empty());
        let open = run("El importe (incluida la parte proporcional de pagas", Profile::Lengclaro, RuleId::B9);
        assert_eq!(open.len(), 1);
        assert_eq!(open[0].severity, Severity::Info);
    }
}
