package pixelframe.ui;

public class DialogScreen {
    private final String message;
    private boolean modal;

    public DialogScreen(String message, boolean modal) {
        this.message = message;
        this.modal = modal;
    }

    public void open() {
        // rendering happens on the next frame
    }
}
