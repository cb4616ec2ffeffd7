// Wire types for the session service. These mirror the versioned JSON
// schemas (turn/1, session-state/1) field for field; the UI renders only
// what the endpoints return.

export interface ThemeDoc {
  topic: string;
  instance: string;
  property: string;
  content: string | null;
  attitude: string | null;
  question: string | null;
}

export interface PreferenceDoc {
  topic: string;
  property: string;
  value: string;
}

export interface ParseResultDoc {
  themes: ThemeDoc[];
  preferences: PreferenceDoc[];
  quit: boolean;
  irrelevant: boolean;
}

export interface AnswerDoc {
  topic: string;
  instance: string;
  property: string;
  value: string | null;
}

export interface CatalogItemDoc {
  topic: string;
  title: string;
  rank: number;
  rating: string | null;
  genres: string[];
  languages: string[];
  countries: string[];
  writers: string[];
  actors: string[];
  directors: string[];
}

export interface ReplyThemeDoc {
  theme: ThemeDoc | null;
  attitude: string | null;
  source: string | null;
  relation: string | null;
  item: CatalogItemDoc | null;
  matched: PreferenceDoc[];
  prompt_attitude: string | null;
}

export interface ReasonerOutputDoc {
  mode: string;
  answers: AnswerDoc[];
  reply_theme: ReplyThemeDoc | null;
}

export interface TurnRecordDoc {
  schema: string;
  round: number;
  user_text: string;
  parse_result: ParseResultDoc;
  reasoner_output: ReasonerOutputDoc;
  reply_text: string;
  rng_draws_used: number;
}

export interface SessionCreatedDoc {
  schema: string;
  session_id: string;
  seed: number;
  greeting: string;
}

export interface SessionStateDoc {
  schema: string;
  id: string;
  seed: number;
  round: number;
  draw_count: number;
  ended: boolean;
  turns: TurnRecordDoc[];
  preferences: PreferenceDoc[];
  recommended: string[];
}
