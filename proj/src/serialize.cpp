#include "solenoid/serialize.hpp"

#include "solenoid/errors.hpp"

namespace solenoid {

Json json_of(const Rational& q) { return q.str(); }

Json json_of(const Point& x) {
    Json j;
    j["real"] = x.real.str();
    Json arr = Json::array();
    for (const auto& v : x.padic) arr.push_back(v.str());
    j["padic"] = arr;
    return j;
}

Json json_of(const Ball& b) {
    Json j;
    j["center"] = json_of(b.center);
    j["radius"] = b.radius.str();
    j["closed"] = b.closed;
    return j;
}

Json json_of(const Cylinder& c) {
    Json j;
    j["anchor"] = json_of(c.anchor);
    j["epsilon"] = c.epsilon.str();
    j["place"] = c.place;
    j["normalized_radius"] = c.normalized_radius.str();
    return j;
}

namespace {

std::string variant_name(GameVariant v) {
    return v == GameVariant::cylinder_absolute ? "cylinder_absolute" : "strong";
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::completed: return "completed";
        case Outcome::bob_default_win: return "bob_default_win";
        default: return "running";
    }
}

}  // namespace

Json json_of(const GameConfig& c) {
    Json j;
    j["variant"] = variant_name(c.variant);
    j["beta"] = c.beta.str();
    j["alpha"] = c.alpha.str();
    j["max_rounds"] = c.max_rounds;
    j["seed"] = c.seed;
    return j;
}

Json json_of(const Transcript& t) {
    Json j;
    j["primes"] = t.primes;
    j["config"] = json_of(t.config);
    j["alice"] = t.alice_descriptor;
    j["bob"] = t.bob_descriptor;
    j["initial"] = json_of(t.initial);
    Json rounds = Json::array();
    for (const RoundRecord& r : t.rounds) {
        Json jr;
        if (r.has_cylinder) {
            jr["alice_cylinder"] = json_of(r.alice_cylinder);
        } else {
            jr["alice_ball"] = json_of(r.alice_ball);
        }
        jr["note"] = r.alice_note;
        jr["evidence"] = r.evidence;
        jr["bob"] = json_of(r.bob_ball);
        jr["assisted"] = r.assisted;
        rounds.push_back(jr);
    }
    j["rounds"] = rounds;
    j["outcome"] = outcome_name(t.outcome);
    if (t.fault) {
        Json jf;
        jf["round"] = t.fault->round;
        jf["actor"] = t.fault->actor;
        jf["reason"] = t.fault->reason;
        j["fault"] = jf;
    } else {
        j["fault"] = nullptr;
    }
    j["limit"] = json_of(t.limit);
    return j;
}

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw DomainError("rational_from_json: expected string");
    return Rational::parse(j.get<std::string>());
}

Point point_from_json(const Json& j) {
    Point x;
    x.real = Rational::parse(j.at("real").get<std::string>());
    for (const auto& v : j.at("padic")) x.padic.push_back(Rational::parse(v.get<std::string>()));
    return x;
}

Ball ball_from_json(const Json& j) {
    Ball b;
    b.center = point_from_json(j.at("center"));
    b.radius = Rational::parse(j.at("radius").get<std::string>());
    b.closed = j.at("closed").get<bool>();
    return b;
}

Cylinder cylinder_from_json(const Json& j) {
    Cylinder c;
    c.anchor = point_from_json(j.at("anchor"));
    c.epsilon = Rational::parse(j.at("epsilon").get<std::string>());
    c.place = j.at("place").get<std::size_t>();
    c.normalized_radius = Rational::parse(j.at("normalized_radius").get<std::string>());
    return c;
}

GameConfig config_from_json(const Json& j) {
    GameConfig c;
    std::string v = j.at("variant").get<std::string>();
    if (v == "cylinder_absolute") {
        c.variant = GameVariant::cylinder_absolute;
    } else if (v == "strong") {
        c.variant = GameVariant::strong;
    } else {
        throw DomainError("config_from_json: unknown variant " + v);
    }
    c.beta = Rational::parse(j.at("beta").get<std::string>());
    c.alpha = Rational::parse(j.at("alpha").get<std::string>());
    c.max_rounds = j.at("max_rounds").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

Transcript transcript_from_json(const Json& j) {
    Transcript t;
    for (const auto& p : j.at("primes")) t.primes.push_back(p.get<unsigned long>());
    t.config = config_from_json(j.at("config"));
    t.alice_descriptor = j.at("alice").get<std::string>();
    t.bob_descriptor = j.at("bob").get<std::string>();
    t.initial = ball_from_json(j.at("initial"));
    for (const auto& jr : j.at("rounds")) {
        RoundRecord r;
        if (jr.contains("alice_cylinder")) {
            r.has_cylinder = true;
            r.alice_cylinder = cylinder_from_json(jr.at("alice_cylinder"));
        } else {
            r.has_cylinder = false;
            r.alice_ball = ball_from_json(jr.at("alice_ball"));
        }
        r.alice_note = jr.at("note").get<std::string>();
        for (const auto& e : jr.at("evidence")) r.evidence.push_back(e.get<std::string>());
        r.bob_ball = ball_from_json(jr.at("bob"));
        r.assisted = jr.at("assisted").get<bool>();
        t.rounds.push_back(r);
    }
    std::string o = j.at("outcome").get<std::string>();
    t.outcome = o == "completed"      ? Outcome::completed
                : o == "bob_default_win" ? Outcome::bob_default_win
                                         : Outcome::running;
    if (j.contains("fault") && !j.at("fault").is_null()) {
        FaultRecord f;
        f.round = j.at("fault").at("round").get<std::size_t>();
        f.actor = j.at("fault").at("actor").get<std::string>();
        f.reason = j.at("fault").at("reason").get<std::string>();
        t.fault = f;
    }
    t.limit = point_from_json(j.at("limit"));
    return t;
}

std::string transcript_dump(const Transcript& t) { return json_of(t).dump(2) + "\n"; }

ReplayReport replay_transcript(const Json& j) {
    ReplayReport rep;
    auto flag = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    Transcript t;
    try {
        t = transcript_from_json(j);
    } catch (const std::exception& e) {
        flag(std::string("parse: ") + e.what());
        rep.byte_identical = false;
        return rep;
    }
    PrimeSet P(t.primes);

    if (!t.initial.closed) flag("initial ball not closed");
    if (t.initial.radius.sign() <= 0 || t.initial.radius >= Rational(1, 2))
        flag("initial radius " + t.initial.radius.str() + " outside ]0, 1/2[");

    Ball current = t.initial;
    bool terminated = false;
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        const RoundRecord& r = t.rounds[i];
        std::string tag = "round " + std::to_string(i) + ": ";
        if (terminated) {
            flag(tag + "extends past terminating fault");
            break;
        }
        bool round_fault = t.fault && t.fault->round == i;
        if (t.config.variant == GameVariant::cylinder_absolute) {
            if (!r.has_cylinder) {
                flag(tag + "missing cylinder in cylinder-game round");
                break;
            }
            Rational renorm = cylinder_normalize(P, r.alice_cylinder.epsilon, r.alice_cylinder.place);
            if (renorm != r.alice_cylinder.normalized_radius)
                flag(tag + "stored normalized radius " + r.alice_cylinder.normalized_radius.str() +
                     " != recomputed " + renorm.str());
            Cylinder c = r.alice_cylinder;
            c.normalized_radius = renorm;
            bool alice_ok = legal_alice(P, current, c, t.config.beta).ok &&
                            t.config.beta < place_beta_ceiling(P, c.place);
            if (!alice_ok && !round_fault) flag(tag + "illegal alice cylinder not recorded as fault");
            if (round_fault && t.fault->actor == "alice") {
                terminated = true;
                continue;
            }
            if (t.outcome == Outcome::bob_default_win && i + 1 == t.rounds.size()) {
                terminated = true;
                continue;
            }
            bool bob_ok = legal_bob(P, current, c, r.bob_ball, t.config.beta).ok;
            if (!bob_ok && !round_fault) flag(tag + "illegal bob ball not recorded as fault");
            if (round_fault) {
                terminated = true;
                continue;
            }
        } else {
            if (r.has_cylinder) {
                flag(tag + "cylinder in strong-game round");
                break;
            }
            bool alice_ok = legal_strong_alice(P, current, r.alice_ball, t.config.alpha).ok;
            if (!alice_ok && !round_fault) flag(tag + "illegal alice ball not recorded as fault");
            if (round_fault && t.fault->actor == "alice") {
                terminated = true;
                continue;
            }
            bool bob_ok = legal_strong_bob(P, r.alice_ball, r.bob_ball, t.config.beta).ok;
            if (!bob_ok && !round_fault) flag(tag + "illegal bob ball not recorded as fault");
            if (round_fault) {
                terminated = true;
                continue;
            }
        }
        current = r.bob_ball;
    }
    if (t.outcome == Outcome::completed && !t.rounds.empty() &&
        !points_equal(t.limit, t.rounds.back().bob_ball.center))
        flag("limit point does not match final ball center");
    if (t.outcome == Outcome::completed && t.rounds.size() != t.config.max_rounds)
        flag("completed outcome with " + std::to_string(t.rounds.size()) + " of " +
             std::to_string(t.config.max_rounds) + " rounds");

    rep.byte_identical = json_of(t).dump(2) == j.dump(2);
    if (!rep.byte_identical) rep.violations.push_back("canonical re-serialization differs from input");
    return rep;
}

}  // namespace solenoid
