//! The live clients against a scripted local HTTP server.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::{Arc, Mutex};
use std::thread::{self, JoinHandle};
use std::time::Duration;

use altimpact::harvest::{HarvestError, IndicatorBackend, MetadataResolver};
use altimpact::live::{
    CrossrefResolver, LiveConfig, PlumxAltmetrics, RetryPolicy, ScopusCitations,
};
use altimpact_core::{Category, Doi, PaperRecord, Timestamp};

struct Server {
    url: String,
    requests: Arc<Mutex<Vec<String>>>,
    handle: JoinHandle<()>,
}

/// Answers one connection per scripted `(status, body)`, in order, and
/// records each request head.
fn serve(script: Vec<(u16, &'static str)>) -> Server {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    let requests = Arc::new(Mutex::new(Vec::new()));
    let log = Arc::clone(&requests);
    let handle = thread::spawn(move || {
        for (status, body) in script {
            let (mut stream, _) = listener.accept().unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut head = String::new();
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).unwrap() == 0 || line == "\r\n" {
                    break;
                }
                head.push_str(&line);
            }
            log.lock().unwrap().push(head);
            let reply = format!(
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            stream.write_all(reply.as_bytes()).unwrap();
        }
    });
    Server {
        url,
        requests,
        handle,
    }
}

fn config(url: &str) -> LiveConfig {
    LiveConfig {
        crossref_url: url.into(),
        crossref_mailto: Some("team@example.org".into()),
        elsevier_url: url.into(),
        elsevier_api_key: "secret-key".into(),
        retry: RetryPolicy {
            attempts: 3,
            initial_backoff: Duration::from_millis(5),
        },
        timeout: Duration::from_secs(5),
    }
}

fn doi() -> Doi {
    Doi::parse("10.1016/S0140-6736(20)30183-5").unwrap()
}

const SCOPUS_OK: &str = r#"{"search-results": {"entry": [{"citedby-count": "82"}]}}"#;

#[test]
fn scopus_retries_server_errors() {
    let server = serve(vec![(503, "{}"), (429, "{}"), (200, SCOPUS_OK)]);
    let obs = ScopusCitations::new(&config(&server.url))
        .fetch(&doi(), Timestamp(0))
        .unwrap();
    server.handle.join().unwrap();
    assert_eq!(obs.len(), 1);
    assert_eq!(obs[0].value, 82);
    assert_eq!(obs[0].key.category, Category::Citations);
    let reqs = server.requests.lock().unwrap();
    assert_eq!(reqs.len(), 3);
    assert!(reqs[2].starts_with("GET /content/search/scopus?"));
    assert!(reqs[2]
        .to_ascii_lowercase()
        .contains("x-els-apikey: secret-key"));
}

#[test]
fn scopus_gives_up_after_three_attempts() {
    let server = serve(vec![(500, "{}"), (500, "{}"), (500, "{}")]);
    let err = ScopusCitations::new(&config(&server.url))
        .fetch(&doi(), Timestamp(0))
        .unwrap_err();
    server.handle.join().unwrap();
    assert!(matches!(err, HarvestError::Backend { .. }), "{err:?}");
    assert_eq!(server.requests.lock().unwrap().len(), 3);
    assert!(!format!("{err} {err:?}").contains("secret-key"));
}

#[test]
fn not_found_means_no_data_and_client_errors_do_not_retry() {
    let server = serve(vec![(404, "{}")]);
    let obs = PlumxAltmetrics::new(&config(&server.url))
        .fetch(&doi(), Timestamp(0))
        .unwrap();
    server.handle.join().unwrap();
    assert!(obs.is_empty());

    let server = serve(vec![(400, "{}")]);
    assert!(ScopusCitations::new(&config(&server.url))
        .fetch(&doi(), Timestamp(0))
        .is_err());
    server.handle.join().unwrap();
    assert_eq!(server.requests.lock().unwrap().len(), 1);
}

#[test]
fn plumx_counts_become_observations() {
    let body = r#"{"count_categories": [
        {"name": "socialMedia", "count_types": [{"name": "TWEET_COUNT", "total": 14409, "sources": [{"name": "Twitter", "total": 14409}]}]},
        {"name": "mention", "count_types": [{"name": "NEWS_COUNT", "total": 12, "sources": [{"name": "News", "total": 12}]}]}
    ]}"#;
    let server = serve(vec![(200, body)]);
    let obs = PlumxAltmetrics::new(&config(&server.url))
        .fetch(&doi(), Timestamp(0))
        .unwrap();
    server.handle.join().unwrap();
    let head = &server.requests.lock().unwrap()[0];
    assert!(
        head.starts_with("GET /analytics/plumx/doi/10.1016/"),
        "{head}"
    );
    let tweets = obs
        .iter()
        .find(|o| o.key.metric == "Tweets")
        .expect("tweets");
    assert_eq!(tweets.value, 14409);
    assert_eq!(tweets.key.source, "Twitter");
    assert!(obs.iter().all(|o| o.is_known()));
}

#[test]
fn crossref_ranks_candidates() {
    let body =
        r#"{"message": {"items": [{"DOI": "10.1056/NEJMoa2001017"}, {"DOI": "10.1/other"}]}}"#;
    let server = serve(vec![(502, "{}"), (200, body)]);
    let record = PaperRecord {
        local_id: "P1".into(),
        authors: vec!["Zhu N".into()],
        title: "A Novel Coronavirus from Patients with Pneumonia".into(),
        doi: None,
        publication_date: None,
        journal: None,
    };
    let found = CrossrefResolver::new(&config(&server.url))
        .candidates(&record)
        .unwrap();
    server.handle.join().unwrap();
    assert_eq!(found[0].as_str(), "10.1056/nejmoa2001017");
    assert_eq!(found.len(), 2);
    let head = &server.requests.lock().unwrap()[1];
    assert!(head.starts_with("GET /works?"));
    assert!(head.contains("mailto=team%40example.org") || head.contains("mailto=team@example.org"));
}
