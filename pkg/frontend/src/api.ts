/** Typed client for the practice service. All reads and writes go through
 * here; the UI never caches counts or bypasses server validation. */

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details?: string[],
  ) {
    super(message);
  }
}

export interface LipshapeRow {
  id: number;
  name: string;
  phonemes: string[];
  word_count: number;
}

export interface WordRow {
  id: number;
  text: string;
  lipshape: string;
  video_count: number;
}

export interface SpeakerRow {
  id: number;
  first_name: string;
  last_name: string;
  name: string;
  video_count: number;
}

export interface Consent {
  informed_about_project: boolean;
  data_use: boolean;
  video_use: boolean;
}

export interface VideoRow {
  id: number;
  word_id: number;
  word: string;
  speaker_id: number;
  speaker: string;
  lipshape: string;
  has_audio: boolean;
  created_at: string;
}

export interface PlanTrial {
  index: number;
  video_id: number;
  choices: string[];
}

export interface SessionPlan {
  session_id: string;
  lipshapes: string;
  speakers: string;
  audio: boolean;
  trials: PlanTrial[];
}

export interface AnswerOutcome {
  index: number;
  correct: boolean;
  correct_word: string;
  result: "correct" | "incorrect";
}

export interface FinishedTrial {
  index: number;
  video_id: number;
  correct_word: string;
  chosen_word: string;
  correct: boolean;
}

export interface FinishedSession {
  session_id: string;
  date: string;
  speakers: string;
  lipshapes: string;
  audio: boolean;
  n_correct: number;
  n_incorrect: number;
  trials: FinishedTrial[];
}

export interface StatsRow {
  session_id: string;
  date: string;
  speakers: string;
  lipshapes: string;
  audio: boolean;
  n_correct: number;
  n_incorrect: number;
}

export interface Stats {
  rows: StatsRow[];
  totals: {
    n_sessions: number;
    n_trials: number;
    n_correct: number;
    n_incorrect: number;
  };
}

export interface OverlayDocument {
  start_ms: number;
  end_ms: number;
  word: string;
  target: string | null;
  svg: string;
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) {
      let code = `http-${response.status}`;
      let message = response.statusText;
      let details: string[] | undefined;
      try {
        const body = await response.json();
        code = body.code ?? code;
        message = body.message ?? JSON.stringify(body);
        details = body.details;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, message, details);
    }
    return response.json() as Promise<T>;
  }

  private json(method: string, body: unknown): RequestInit {
    return {
      method,
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  lipshapes(): Promise<LipshapeRow[]> {
    return this.request("/lipshapes");
  }

  words(lipshapeId: number): Promise<WordRow[]> {
    return this.request(`/lipshapes/${lipshapeId}/words`);
  }

  addWord(lipshape: string, text: string): Promise<WordRow> {
    return this.request("/words", this.json("POST", { lipshape, text }));
  }

  deleteWord(wordId: number): Promise<{ videos_deleted: number }> {
    return this.request(`/words/${wordId}`, { method: "DELETE" });
  }

  speakers(): Promise<SpeakerRow[]> {
    return this.request("/speakers");
  }

  addSpeaker(
    firstName: string,
    lastName: string,
    consent: Consent,
  ): Promise<{ id: number }> {
    return this.request(
      "/speakers",
      this.json("POST", {
        first_name: firstName,
        last_name: lastName,
        consent,
      }),
    );
  }

  deleteSpeaker(speakerId: number): Promise<{ videos_deleted: number }> {
    return this.request(`/speakers/${speakerId}`, { method: "DELETE" });
  }

  videos(filter: { word?: number; speaker?: number } = {}): Promise<VideoRow[]> {
    const params = new URLSearchParams();
    if (filter.word !== undefined) params.set("word", String(filter.word));
    if (filter.speaker !== undefined) params.set("speaker", String(filter.speaker));
    const query = params.toString();
    return this.request(`/videos${query ? "?" + query : ""}`);
  }

  uploadVideo(
    wordId: number,
    speakerId: number,
    media: Blob,
    hasAudio: boolean,
    filename = "clip.webm",
  ): Promise<VideoRow> {
    const form = new FormData();
    form.append("media", media, filename);
    form.append("word_id", String(wordId));
    form.append("speaker_id", String(speakerId));
    form.append("has_audio", String(hasAudio));
    return this.request("/videos", { method: "POST", body: form });
  }

  mediaUrl(videoId: number): string {
    return `${this.base}/videos/${videoId}/media`;
  }

  retagVideo(
    videoId: number,
    patch: { word_id?: number; speaker_id?: number; has_audio?: boolean },
  ): Promise<VideoRow> {
    return this.request(`/videos/${videoId}`, this.json("PATCH", patch));
  }

  deleteVideo(videoId: number): Promise<{ videos_deleted: number }> {
    return this.request(`/videos/${videoId}`, { method: "DELETE" });
  }

  startLipshapeSession(options: {
    lipshape: string | null;
    speaker: number | null;
    audio: boolean;
    trials: number;
  }): Promise<SessionPlan> {
    return this.request("/sessions/lipshape", this.json("POST", options));
  }

  answer(sessionId: string, index: number, choice: string): Promise<AnswerOutcome> {
    return this.request(
      `/sessions/${sessionId}/answers`,
      this.json("POST", { index, choice }),
    );
  }

  finish(sessionId: string): Promise<FinishedSession> {
    return this.request(`/sessions/${sessionId}/finish`, { method: "POST" });
  }

  stats(): Promise<Stats> {
    return this.request("/sessions");
  }

  wordSession(word: string, speaker: number | null, audio: boolean): Promise<{
    word: string;
    audio: boolean;
    video_ids: number[];
  }> {
    return this.request("/sessions/word", this.json("POST", { word, speaker, audio }));
  }

  overlayRender(
    transcript: string,
    faceBox: { x: number; y: number; width: number; height: number },
    side: "left" | "right" = "left",
  ): Promise<{ documents: OverlayDocument[] }> {
    return this.request(
      "/overlay/render",
      this.json("POST", { transcript, face_box: faceBox, side }),
    );
  }
}
