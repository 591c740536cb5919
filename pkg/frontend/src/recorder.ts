/** Camera capture built on getUserMedia + MediaRecorder.
 *
 * start() attaches the live preview to a <video>; record()/stop() produce
 * a webm Blob the caller can upload or throw away (accept/reject flow). */

export class CameraRecorder {
  private stream: MediaStream | null = null;
  private recorder: MediaRecorder | null = null;
  private chunks: BlobPart[] = [];

  static isSupported(): boolean {
    return (
      typeof navigator !== "undefined" &&
      !!navigator.mediaDevices?.getUserMedia &&
      typeof MediaRecorder !== "undefined"
    );
  }

  async start(preview: HTMLVideoElement): Promise<void> {
    this.stream = await navigator.mediaDevices.getUserMedia({
      video: { width: { ideal: 1280 }, height: { ideal: 720 } },
      audio: true,
    });
    preview.srcObject = this.stream;
    preview.muted = true; // avoid feedback while previewing
    await preview.play();
  }

  record(): void {
    if (!this.stream) throw new Error("camera not started");
    this.chunks = [];
    const mimeType = MediaRecorder.isTypeSupported("video/webm;codecs=vp8,opus")
      ? "video/webm;codecs=vp8,opus"
      : "video/webm";
    this.recorder = new MediaRecorder(this.stream, { mimeType });
    this.recorder.ondataavailable = (event) => {
      if (event.data.size > 0) this.chunks.push(event.data);
    };
    this.recorder.start();
  }

  get recording(): boolean {
    return this.recorder?.state === "recording";
  }

  stop(): Promise<Blob> {
    return new Promise((resolve, reject) => {
      const recorder = this.recorder;
      if (!recorder) {
        reject(new Error("not recording"));
        return;
      }
      recorder.onstop = () => {
        resolve(new Blob(this.chunks, { type: "video/webm" }));
      };
      recorder.onerror = () => reject(new Error("recording failed"));
      recorder.stop();
    });
  }

  dispose(): void {
    this.recorder = null;
    this.stream?.getTracks().forEach((track) => track.stop());
    this.stream = null;
  }
}
