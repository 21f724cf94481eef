use freebessel::cli;

struct Case {
    command: String,
    expected: String,
}

fn console_cases(text: &str) -> Vec<Case> {
    let mut cases: Vec<Case> = Vec::new();
    let mut inside = false;
    for line in text.lines() {
        if line.starts_with("```") {
            inside = line.trim() == "```console";
            continue;
        }
        if !inside {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ ") {
            cases.push(Case { command: cmd.to_string(), expected: String::new() });
        } else if let Some(case) = cases.last_mut() {
            case.expected.push_str(line);
            case.expected.push('\n');
        }
    }
    cases
}

#[test]
fn readme_console_blocks_match_cli() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    let cases = console_cases(&text);
    assert!(cases.len() >= 8, "found only {} console commands", cases.len());
    for case in cases {
        let mut out = Vec::new();
        let code = cli::run(case.command.split_whitespace(), &mut out);
        assert_eq!(code, 0, "{}", case.command);
        assert_eq!(String::from_utf8(out).unwrap(), case.expected, "{}", case.command);
    }
}
